#include <doctest.h>

#include "regionlm/algebra.hpp"
#include "regionlm/errors.hpp"
#include "regionlm/generator.hpp"
#include "regionlm/oracle.hpp"
#include "test_helpers.hpp"

using namespace regionlm;
using rlmtest::check_sets;
using rlmtest::set;

TEST_CASE("CONTAINING weights contained regions by score and length") {
    // Two unit words inside a length-3 region: (1 + 1) / 3.
    check_sets(containing(set({{1, 4, 1.0}}), set({{1, 2, 1.0}, {3, 4, 1.0}})),
               set({{1, 4, 2.0 / 3.0}}));
}

TEST_CASE("CONTAINING with empty right operand is empty") {
    CHECK(containing(set({{1, 4, 1.0}}), {}).empty());
}

TEST_CASE("CONTAINING: a region contains itself") {
    // Self-extent containment: 0.5 * (1 * 3) / 3 = 0.5.
    check_sets(containing(set({{1, 4, 0.5}}), set({{1, 4, 1.0}})),
               set({{1, 4, 0.5}}));
}

TEST_CASE("CONTAINED_BY adds the scores of all containing regions") {
    check_sets(contained_by(set({{2, 3, 1.0}}), set({{1, 4, 0.5}, {2, 3, 0.25}})),
               set({{2, 3, 0.75}}));
}

TEST_CASE("CONTAINED_BY with empty right operand is empty") {
    CHECK(contained_by(set({{2, 3, 1.0}}), {}).empty());
}

TEST_CASE("CONTAINED_BY direction matters") {
    CHECK(contained_by(set({{1, 4, 1.0}}), set({{2, 3, 1.0}})).empty());
}

TEST_CASE("SCALE multiplies scores") {
    check_sets(scale(0.2, set({{7, 8, 1.0}})), set({{7, 8, 0.2}}));
}

TEST_CASE("SCALE by 1 is the identity") {
    RegionSet r = set({{1, 4, 0.5}, {6, 9, 2.0}});
    CHECK(scale(1.0, r) == r);
}

TEST_CASE("SCALE composes multiplicatively") {
    RegionSet r = set({{1, 4, 0.5}, {6, 9, 2.0}});
    check_sets(scale(0.5, scale(0.5, r)), scale(0.25, r));
}

TEST_CASE("SCALE rejects nonpositive and non-finite factors") {
    RegionSet r = set({{1, 2, 1.0}});
    CHECK_THROWS_AS(scale(0.0, r), ValidationError);
    CHECK_THROWS_AS(scale(-2.0, r), ValidationError);
    CHECK_THROWS_AS(scale(std::numeric_limits<double>::infinity(), r),
                    ValidationError);
    CHECK_THROWS_AS(scale(std::numeric_limits<double>::quiet_NaN(), r),
                    ValidationError);
}

TEST_CASE("AND multiplies scores on matching extents") {
    check_sets(and_(set({{1, 4, 0.5}}), set({{1, 4, 0.4}})),
               set({{1, 4, 0.2}}));
}

TEST_CASE("AND with the empty set is empty") {
    CHECK(and_(set({{1, 4, 0.5}}), {}).empty());
}

TEST_CASE("AND requires extent equality, not overlap") {
    CHECK(and_(set({{1, 4, 1.0}}), set({{2, 5, 1.0}})).empty());
}

TEST_CASE("OR sums scores on shared extents") {
    check_sets(or_(set({{1, 4, 0.5}}), set({{1, 4, 0.4}})),
               set({{1, 4, 0.9}}));
}

TEST_CASE("OR with the empty set is the identity") {
    RegionSet r = set({{1, 4, 0.5}, {7, 9, 1.5}});
    CHECK(or_(r, {}) == r);
    CHECK(or_({}, r) == r);
}

TEST_CASE("OR of disjoint sets is their union") {
    check_sets(or_(set({{1, 2, 1.0}}), set({{3, 4, 1.0}})),
               set({{1, 2, 1.0}, {3, 4, 1.0}}));
}

// ---------------------------------------------------------------------------
// Properties on random sets

TEST_CASE("operators project onto a subset of the left operand's extents") {
    Rng rng(11);
    for (int t = 0; t < 200; ++t) {
        RegionSet a = generate_region_set(rng, 30, 60);
        RegionSet b = generate_region_set(rng, 30, 60);
        for (const RegionSet& result : {containing(a, b), contained_by(a, b)}) {
            for (const Region& r : result) {
                CHECK(a.find(r.start, r.end) != nullptr);
            }
        }
    }
}

TEST_CASE("operators preserve score positivity") {
    Rng rng(12);
    for (int t = 0; t < 200; ++t) {
        RegionSet a = generate_region_set(rng, 30, 60);
        RegionSet b = generate_region_set(rng, 30, 60);
        double f = rng.positive(0.01, 5.0);
        for (const RegionSet& result :
             {containing(a, b), contained_by(a, b), and_(a, b), or_(a, b),
              scale(f, a)}) {
            for (const Region& r : result) CHECK(r.score > 0.0);
        }
    }
}

TEST_CASE("scale threads through the left operand of containment joins") {
    Rng rng(13);
    for (int t = 0; t < 200; ++t) {
        RegionSet a = generate_region_set(rng, 30, 60);
        RegionSet b = generate_region_set(rng, 30, 60);
        double f = rng.positive(0.1, 4.0);
        check_sets(containing(scale(f, a), b), scale(f, containing(a, b)));
        check_sets(contained_by(scale(f, a), b),
                   scale(f, contained_by(a, b)));
    }
}

TEST_CASE("scale threads through the right operand of CONTAINED_BY when "
          "membership is unchanged") {
    // Membership is score-independent, so scaling the containing side scales
    // every survivor's score.
    Rng rng(14);
    for (int t = 0; t < 200; ++t) {
        RegionSet a = generate_region_set(rng, 30, 60);
        RegionSet b = generate_region_set(rng, 30, 60);
        double f = rng.positive(0.1, 4.0);
        check_sets(contained_by(a, scale(f, b)),
                   scale(f, contained_by(a, b)));
    }
}

TEST_CASE("random operator trials match the naive oracle") {
    Rng rng(15);
    for (int t = 0; t < 300; ++t) {
        RegionSet a = generate_region_set(rng);
        RegionSet b = generate_region_set(rng);
        check_sets(containing(a, b), oracle::naive_containing(a, b));
        check_sets(contained_by(a, b), oracle::naive_contained_by(a, b));
        check_sets(and_(a, b), oracle::naive_and(a, b));
        check_sets(or_(a, b), oracle::naive_or(a, b));
    }
}
