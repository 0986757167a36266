#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>

#include "regionlm/corpus_index.hpp"
#include "regionlm/errors.hpp"
#include "regionlm/generator.hpp"
#include "regionlm/query.hpp"
#include "test_helpers.hpp"

using namespace regionlm;
using rlmtest::check_sets;
using rlmtest::set;

namespace {

const char* kFixture = "<root><doc>db ir db</doc><doc>db xx yy</doc></root>";

std::filesystem::path scratch_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("regionlm_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("two-word corpus gets positions forced by the numbering rule") {
    CorpusIndex index = build_index("<doc>a b</doc>");
    CHECK(index.word_count() == 2);
    CHECK(index.postings().at("a") == std::vector<uint32_t>{1});
    CHECK(index.postings().at("b") == std::vector<uint32_t>{2});
    CHECK(index.elements().at("doc") == std::vector<Extent>{{1, 3}});
    CHECK(index.elements().at("root") == std::vector<Extent>{{1, 3}});
}

TEST_CASE("six-word fixture: words numbered in document order, tags consume "
          "no positions") {
    CorpusIndex index = build_index(kFixture);
    CHECK(index.word_count() == 6);
    CHECK(index.postings().at("db") == std::vector<uint32_t>{1, 3, 4});
    CHECK(index.elements().at("doc") == std::vector<Extent>{{1, 4}, {4, 7}});
    CHECK(index.elements().at("root") == std::vector<Extent>{{1, 7}});
}

TEST_CASE("nested element covering an identical extent") {
    CorpusIndex index = build_index("<recipe><title>banana pie</title></recipe>");
    CHECK(index.elements().at("recipe") == std::vector<Extent>{{1, 3}});
    CHECK(index.elements().at("title") == std::vector<Extent>{{1, 3}});
    CHECK(index.elements().at("root") == std::vector<Extent>{{1, 3}});
}

TEST_CASE("tokenization lowercases and splits on non-alphanumeric runs") {
    CorpusIndex index = build_index("<d>Foo-BAR, baz42; foo</d>");
    CHECK(index.postings().at("foo") == std::vector<uint32_t>{1, 4});
    CHECK(index.postings().at("bar") == std::vector<uint32_t>{2});
    CHECK(index.postings().at("baz42") == std::vector<uint32_t>{3});
}

TEST_CASE("XML declarations and comments are accepted") {
    CorpusIndex index = build_index(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        "<doc><!-- not words -->a b</doc>");
    CHECK(index.word_count() == 2);
}

TEST_CASE("multi-byte UTF-8 words index and query intact") {
    CorpusIndex index = build_index("<doc>caf\xc3\xa9 und K\xc3\xbc" "che</doc>");
    CHECK(index.word_count() == 3);
    CHECK(index.postings().count("caf\xc3\xa9") == 1);
    // ASCII letters lowercase; multi-byte sequences pass through untouched.
    CHECK(index.postings().count("k\xc3\xbc" "che") == 1);
    check_sets(evaluate(parse_query("<doc> CONTAINING caf\xc3\xa9"), index),
               set({{1, 4, 1.0 / 3.0}}));
}

TEST_CASE("attributes are parsed but not indexed") {
    CorpusIndex index = build_index("<doc id=\"zz\" lang='en'>a b</doc>");
    CHECK(index.word_count() == 2);
    CHECK(index.postings().count("zz") == 0);
    CHECK(index.postings().count("en") == 0);
}

TEST_CASE("entities and CDATA index as character data") {
    CorpusIndex index = build_index("<d>a&amp;b <![CDATA[c d]]> e&#102;f</d>");
    // '&' separates, so "a&b" is two words; &#102; is 'f' glued into one word.
    CHECK(index.word_count() == 5);
    CHECK(index.postings().at("a") == std::vector<uint32_t>{1});
    CHECK(index.postings().at("b") == std::vector<uint32_t>{2});
    CHECK(index.postings().at("eff") == std::vector<uint32_t>{5});
}

TEST_CASE("element boundaries separate words") {
    CorpusIndex index = build_index("<d>ab<i>cd</i>ef</d>");
    CHECK(index.word_count() == 3);
    CHECK(index.postings().count("abcdef") == 0);
    CHECK(index.postings().at("cd") == std::vector<uint32_t>{2});
}

TEST_CASE("empty elements are dropped") {
    CorpusIndex index = build_index("<root><doc>a</doc><doc></doc><pad/></root>");
    CHECK(index.elements().at("doc") == std::vector<Extent>{{1, 2}});
    CHECK(index.elements().count("pad") == 0);
}

TEST_CASE("a corpus whose root tag is 'root' registers it once") {
    CorpusIndex index = build_index("<root>a b</root>");
    CHECK(index.elements().at("root") == std::vector<Extent>{{1, 3}});
    check_sets(index.element_regions("root"), set({{1, 3, 1.0}}));
}

TEST_CASE("malformed XML reports line and column") {
    try {
        build_index("<doc>a\n<b>c</doc>");
        FAIL("expected XmlParseError");
    } catch (const XmlParseError& e) {
        CHECK(e.line() == 2);
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("zero-word corpus is rejected") {
    CHECK_THROWS_AS(build_index("<doc></doc>"), ValidationError);
    CHECK_THROWS_AS(build_index("<doc><a/><b/></doc>"), ValidationError);
}

TEST_CASE("word_regions yields unit single-word regions") {
    CorpusIndex index = build_index(kFixture);
    check_sets(index.word_regions("db"),
               set({{1, 2, 1.0}, {3, 4, 1.0}, {4, 5, 1.0}}));
    check_sets(index.word_regions("ir"), set({{2, 3, 1.0}}));
    CHECK(index.word_regions("banana").empty());
}

TEST_CASE("element_regions yields unit regions per occurrence") {
    CorpusIndex index = build_index(kFixture);
    check_sets(index.element_regions("doc"), set({{1, 4, 1.0}, {4, 7, 1.0}}));
    check_sets(index.element_regions("root"), set({{1, 7, 1.0}}));
    CHECK(index.element_regions("unknown").empty());
}

TEST_CASE("stored sets register, replace and resolve") {
    CorpusIndex index = build_index(kFixture);
    index.register_stored_set("PageRank", set({{1, 4, 0.7}, {4, 7, 0.3}}));
    REQUIRE(index.stored_set("PageRank") != nullptr);
    check_sets(*index.stored_set("PageRank"), set({{1, 4, 0.7}, {4, 7, 0.3}}));

    index.register_stored_set("PageRank", set({{1, 4, 0.9}}));
    check_sets(*index.stored_set("PageRank"), set({{1, 4, 0.9}}));
    CHECK(index.stored_set("Other") == nullptr);
}

TEST_CASE("stored-set validation rejects bad regions and names") {
    CorpusIndex index = build_index(kFixture);
    CHECK_THROWS_AS(
        index.register_stored_set("p", RegionSet::canonical({{1, 4, 0.0}})),
        ValidationError);
    CHECK_THROWS_AS(
        index.register_stored_set("p", RegionSet::canonical({{5, 5, 1.0}})),
        ValidationError);
    // (1, 9) exceeds the corpus bound n+1 = 7.
    CHECK_THROWS_AS(index.register_stored_set("p", set({{1, 9, 1.0}})),
                    ValidationError);
    CHECK_THROWS_AS(index.register_stored_set("9lives", set({{1, 2, 1.0}})),
                    ValidationError);
    CHECK_THROWS_AS(index.register_stored_set("bad-name", set({{1, 2, 1.0}})),
                    ValidationError);
}

TEST_CASE("occurrence_count restricts postings to an interval") {
    CorpusIndex index = build_index(kFixture);
    CHECK(index.occurrence_count("db", 1, 7) == 3);
    CHECK(index.occurrence_count("db", 1, 4) == 2);
    CHECK(index.occurrence_count("db", 4, 7) == 1);
    CHECK(index.occurrence_count("zz", 1, 7) == 0);
}

TEST_CASE("positions over all tokens are exactly 1..n, each once") {
    Rng rng(5);
    CorpusProfile profile;
    for (int t = 0; t < 20; ++t) {
        GeneratedCorpus corpus = generate_corpus(profile, rng);
        std::set<uint32_t> seen;
        for (const auto& [token, positions] : corpus.index.postings()) {
            for (uint32_t p : positions) {
                CHECK(seen.insert(p).second);
            }
        }
        CHECK(seen.size() == corpus.index.word_count());
        if (!seen.empty()) {
            CHECK(*seen.begin() == 1);
            CHECK(*seen.rbegin() == corpus.index.word_count());
        }
    }
}

TEST_CASE("element regions of any tags are disjoint or nested") {
    Rng rng(6);
    CorpusProfile profile;
    profile.chain = {"video", "scene", "shot"};
    for (int t = 0; t < 10; ++t) {
        GeneratedCorpus corpus = generate_corpus(profile, rng);
        std::vector<Extent> all;
        for (const auto& [tag, extents] : corpus.index.elements()) {
            all.insert(all.end(), extents.begin(), extents.end());
        }
        for (const Extent& a : all) {
            for (const Extent& b : all) {
                bool disjoint = a.end <= b.start || b.end <= a.start;
                bool nested = (a.start <= b.start && a.end >= b.end)
                           || (b.start <= a.start && b.end >= a.end);
                CHECK((disjoint || nested));
            }
        }
    }
}

TEST_CASE("building the same corpus twice is deterministic") {
    CorpusIndex a = build_index(kFixture);
    CorpusIndex b = build_index(kFixture);
    CHECK(a == b);
}

TEST_CASE("save/load round-trips the fixture index") {
    auto dir = scratch_dir("roundtrip");
    CorpusIndex index = build_index(kFixture);
    index.register_stored_set("PageRank", set({{1, 4, 0.7}, {4, 7, 0.3}}));
    save_index(index, dir);

    CHECK(std::filesystem::exists(dir / "meta.tsv"));
    CHECK(std::filesystem::exists(dir / "postings.tsv"));
    CHECK(std::filesystem::exists(dir / "elements.tsv"));
    CHECK(std::filesystem::exists(dir / "stored" / "PageRank.tsv"));

    CorpusIndex loaded = load_index(dir);
    CHECK(loaded == index);
    std::filesystem::remove_all(dir);
}

TEST_CASE("loading from an empty directory fails") {
    auto dir = scratch_dir("empty");
    CHECK_THROWS_AS(load_index(dir), IoError);
    std::filesystem::remove_all(dir);
}

TEST_CASE("version mismatch is an explicit error") {
    auto dir = scratch_dir("version");
    save_index(build_index(kFixture), dir);
    std::ofstream meta(dir / "meta.tsv");
    meta << "version\t99\nword_count\t6\n";
    meta.close();
    CHECK_THROWS_WITH_AS(load_index(dir),
                         doctest::Contains("version mismatch"), IoError);
    std::filesystem::remove_all(dir);
}

TEST_CASE("corrupt index files are explicit errors") {
    auto dir = scratch_dir("corrupt");
    save_index(build_index(kFixture), dir);

    auto write_postings = [&](const std::string& content) {
        std::ofstream postings(dir / "postings.tsv");
        postings << content;
    };
    write_postings("db\t1 2 junk\n");
    CHECK_THROWS_AS(load_index(dir), IoError);
    // Out-of-order positions break the binary searches.
    write_postings("db\t3 1 4\nir\t2\nxx\t5\nyy\t6\n");
    CHECK_THROWS_AS(load_index(dir), IoError);
    // Six words claimed, fewer positions present.
    write_postings("db\t1 3 4\n");
    CHECK_THROWS_WITH_AS(load_index(dir), doctest::Contains("word_count"),
                         IoError);
    std::filesystem::remove_all(dir);
}

TEST_CASE("stored-set scores survive the decimal round trip bit-exactly") {
    auto dir = scratch_dir("decimal");
    CorpusIndex index = build_index(kFixture);
    index.register_stored_set(
        "pr", set({{1, 4, 0.1 + 0.2}, {4, 7, 1.0 / 3.0}, {2, 3, 7.25e-11}}));
    save_index(index, dir);
    CorpusIndex loaded = load_index(dir);
    const RegionSet* reloaded = loaded.stored_set("pr");
    REQUIRE(reloaded != nullptr);
    CHECK(reloaded->to_tsv() == index.stored_set("pr")->to_tsv());
    CHECK(*reloaded == *index.stored_set("pr"));
    std::filesystem::remove_all(dir);
}
