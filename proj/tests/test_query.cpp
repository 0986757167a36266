#include <doctest.h>

#include "regionlm/errors.hpp"
#include "regionlm/generator.hpp"
#include "regionlm/query.hpp"
#include "test_helpers.hpp"

using namespace regionlm;
using rlmtest::check_sets;
using rlmtest::set;

namespace {

const char* kFixture = "<root><doc>db ir db</doc><doc>db xx yy</doc></root>";

bool parses_to(const std::string& text, const ExprPtr& expected) {
    return expr_equal(parse_query(text), expected);
}

}  // namespace

TEST_CASE("parses element CONTAINING word") {
    CHECK(parses_to("<doc> CONTAINING db",
                    make_containing(make_element("doc"), make_word("db"))));
}

TEST_CASE("parses SCALE with a decimal factor") {
    CHECK(parses_to("0.2 SCALE banana",
                    make_scale(0.2, make_word("banana"))));
}

TEST_CASE("AND binds looser than CONTAINING") {
    ExprPtr expected =
        make_and(make_containing(make_element("a"), make_word("b")),
                 make_containing(make_element("a"), make_word("c")));
    CHECK(parses_to("<a> CONTAINING b AND <a> CONTAINING c", expected));
    CHECK(parses_to("(<a> CONTAINING b) AND (<a> CONTAINING c)", expected));
}

TEST_CASE("OR binds loosest, SCALE tightest") {
    // 0.2 SCALE a OR b AND c == (0.2 SCALE a) OR (b AND c)
    CHECK(parses_to("0.2 SCALE a OR b AND c",
                    make_or(make_scale(0.2, make_word("a")),
                            make_and(make_word("b"), make_word("c")))));
}

TEST_CASE("binary operators are left-associative") {
    CHECK(parses_to("a AND b AND c",
                    make_and(make_and(make_word("a"), make_word("b")),
                             make_word("c"))));
    CHECK(parses_to(
        "<a> CONTAINING b CONTAINED_BY <c>",
        make_contained_by(make_containing(make_element("a"), make_word("b")),
                          make_element("c"))));
}

TEST_CASE("operator keywords are case-insensitive, words are lowercased") {
    CHECK(parses_to("<doc> containing DB",
                    make_containing(make_element("doc"), make_word("db"))));
}

TEST_CASE("a number not followed by SCALE is a word") {
    CHECK(parses_to("1984", make_word("1984")));
    CHECK(parses_to("<doc> CONTAINING 42",
                    make_containing(make_element("doc"), make_word("42"))));
}

TEST_CASE("stored-set references parse") {
    CHECK(parses_to("$PageRank AND (<doc> CONTAINING google)",
                    make_and(make_stored("PageRank"),
                             make_containing(make_element("doc"),
                                             make_word("google")))));
}

TEST_CASE("syntax errors carry a position") {
    CHECK_THROWS_AS(parse_query("<doc> CONTAINING"), QuerySyntaxError);
    CHECK_THROWS_AS(parse_query("(<doc> CONTAINING db"), QuerySyntaxError);
    CHECK_THROWS_AS(parse_query("<doc> db"), QuerySyntaxError);
    CHECK_THROWS_AS(parse_query(""), QuerySyntaxError);
    CHECK_THROWS_AS(parse_query("<>"), QuerySyntaxError);
    CHECK_THROWS_AS(parse_query("db @"), QuerySyntaxError);
    try {
        parse_query("<doc> CONTAINING !");
        FAIL("expected QuerySyntaxError");
    } catch (const QuerySyntaxError& e) {
        CHECK(e.position() == 18);
    }
}

TEST_CASE("zero SCALE factor is rejected at parse time") {
    CHECK_THROWS_AS(parse_query("0 SCALE db"), QuerySyntaxError);
}

TEST_CASE("print/parse round-trip rebuilds an identical tree") {
    Rng rng(21);
    const std::vector<std::string> queries = {
        "<doc> CONTAINING db",
        "0.2 SCALE banana",
        "(<doc> CONTAINED_BY ((0.2 SCALE (<root> CONTAINING db)) OR "
        "(0.8 SCALE (<doc> CONTAINING db)))) AND (<doc> CONTAINED_BY "
        "((0.2 SCALE (<root> CONTAINING ir)) OR (0.8 SCALE (<doc> CONTAINING "
        "ir))))",
        "$PageRank AND (<doc> CONTAINED_BY (<doc> CONTAINING google))",
        "((1.0 SCALE (<doc> CONTAINING broken)) OR (0.2 SCALE (<doc> "
        "CONTAINING fractured))) AND ((0.5 SCALE (<doc> CONTAINING heart)) OR "
        "(0.1 SCALE (<doc> CONTAINING ticker)))",
        "<shot> CONTAINED_BY ((0.18 SCALE (<root> CONTAINING ni)) OR (0.02 "
        "SCALE (<video> CONTAINING ni)) OR (0.4 SCALE (<scene> CONTAINING "
        "ni)) OR (0.4 SCALE (<shot> CONTAINING ni)))",
    };
    for (const std::string& q : queries) {
        ExprPtr parsed = parse_query(q);
        ExprPtr reparsed = parse_query(to_query_string(parsed));
        CHECK(expr_equal(parsed, reparsed));
    }
}

TEST_CASE("tiny scale factors round-trip through exponent notation") {
    ExprPtr e = parse_query("0.00001 SCALE db");
    std::string printed = to_query_string(e);  // shortest form is "1e-05"
    CHECK(expr_equal(parse_query(printed), e));
}

TEST_CASE("fully parenthesized queries parse the same without parens") {
    CHECK(expr_equal(
        parse_query("(<doc> CONTAINING db) AND (<doc> CONTAINING ir)"),
        parse_query("<doc> CONTAINING db AND <doc> CONTAINING ir")));
}

TEST_CASE("evaluate: CONTAINING ranks documents by relative term frequency") {
    CorpusIndex index = build_index(kFixture);
    check_sets(evaluate(parse_query("<doc> CONTAINING db"), index),
               set({{1, 4, 2.0 / 3.0}, {4, 7, 1.0 / 3.0}}));
}

TEST_CASE("evaluate: absent word gives the empty set") {
    CorpusIndex index = build_index(kFixture);
    CHECK(evaluate(parse_query("<doc> CONTAINING zz1"), index).empty());
}

TEST_CASE("evaluate: conjunctive query multiplies term scores") {
    CorpusIndex index = build_index(kFixture);
    check_sets(evaluate(
                   parse_query("(<doc> CONTAINING db) AND (<doc> CONTAINING ir)"),
                   index),
               set({{1, 4, 2.0 / 9.0}}));
}

TEST_CASE("evaluate: unknown stored set is an error naming the set") {
    CorpusIndex index = build_index(kFixture);
    CHECK_THROWS_WITH_AS(evaluate(parse_query("$Missing"), index),
                         doctest::Contains("$Missing"), EvalError);
}

TEST_CASE("evaluate is pure") {
    CorpusIndex index = build_index(kFixture);
    ExprPtr q = parse_query("(<doc> CONTAINING db) OR (0.5 SCALE <doc>)");
    CHECK(evaluate(q, index) == evaluate(q, index));
}

TEST_CASE("rank orders by score desc, start asc, end asc") {
    RegionSet s = set({{1, 4, 0.2}, {4, 7, 0.5}});
    RankedResult top1 = rank(s, 1);
    REQUIRE(top1.size() == 1);
    CHECK(top1[0].start == 4);
    CHECK(top1[0].score == 0.5);

    RegionSet ties = set({{4, 7, 0.5}, {1, 4, 0.5}, {1, 3, 0.5}});
    RankedResult all = rank(ties, 10);
    REQUIRE(all.size() == 3);
    CHECK(all[0].start == 1);
    CHECK(all[0].end == 3);
    CHECK(all[1].end == 4);
    CHECK(all[2].start == 4);

    CHECK(rank(s, 0).empty());
}
