#include <doctest.h>

#include "regionlm/verify.hpp"
#include "test_helpers.hpp"

using namespace regionlm;
using rlmtest::set;

TEST_CASE("approx_equal is relative") {
    CHECK(verify::approx_equal(1.0, 1.0 + 1e-13, 1e-12));
    CHECK(!verify::approx_equal(1.0, 1.0 + 1e-11, 1e-12));
    CHECK(verify::approx_equal(1e-300, 1e-300, 1e-12));
    CHECK(verify::approx_equal(0.0, 0.0, 1e-12));
}

TEST_CASE("set comparison flags injected score and membership bugs") {
    RegionSet good = set({{1, 4, 0.5}, {4, 7, 0.25}});
    CHECK(verify::compare_region_sets(good, good, 1e-12).empty());

    // Score nudged past the tolerance: caught.
    RegionSet nudged = set({{1, 4, 0.5 * (1.0 + 1e-6)}, {4, 7, 0.25}});
    CHECK(verify::compare_region_sets(nudged, good, 1e-9).find("score mismatch")
          != std::string::npos);
    // Within tolerance: accepted.
    RegionSet close = set({{1, 4, 0.5 * (1.0 + 1e-13)}, {4, 7, 0.25}});
    CHECK(verify::compare_region_sets(close, good, 1e-12).empty());

    RegionSet missing = set({{1, 4, 0.5}});
    CHECK(verify::compare_region_sets(missing, good, 1e-12).find("missing")
          != std::string::npos);
    RegionSet extra = set({{1, 4, 0.5}, {4, 7, 0.25}, {8, 9, 1.0}});
    CHECK(verify::compare_region_sets(extra, good, 1e-12).find("unexpected")
          != std::string::npos);
}

TEST_CASE("failing suites render a FAIL line with the first counterexample") {
    verify::SuiteReport report;
    report.name = "ops";
    report.sections = {{"CONTAINING", 499}};
    report.trials = 500;
    report.failures = 1;
    report.first_failure = "CONTAINING trial 7: score mismatch at (3, 9)";
    std::string rendered = report.render();
    CHECK(rendered.find("ops: CONTAINING 499/499 pass") != std::string::npos);
    CHECK(rendered.find("result: FAIL (499/500)") != std::string::npos);
    CHECK(rendered.find("CONTAINING trial 7") != std::string::npos);
    CHECK(!report.passed());
}

TEST_CASE("passing suites render x/x pass per section") {
    verify::SuiteReport report = verify::run_algebraic_law_suite(20, 3);
    CHECK(report.passed());
    std::string rendered = report.render();
    CHECK(rendered.find("laws: AND commutativity 20/20 pass") != std::string::npos);
    CHECK(rendered.find("result: PASS (140/140)") != std::string::npos);
}
