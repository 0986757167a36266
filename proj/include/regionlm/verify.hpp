#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "regionlm/region.hpp"

namespace regionlm::verify {

/// Outcome of one property suite. `sections` carries per-case pass counts in
/// a fixed order so reports are byte-identical for a fixed seed.
struct SuiteReport {
    std::string name;
    std::vector<std::pair<std::string, size_t>> sections;
    size_t trials = 0;
    size_t failures = 0;
    std::string first_failure;

    bool passed() const { return failures == 0; }

    /// "<name>: <section> k/k pass" lines plus a result line.
    std::string render() const;
};

/// Engine operators against the naive nested-loop oracle on random canonical
/// sets (<= 50 regions, positions <= 100); exact membership, scores within
/// relative 1e-12.
SuiteReport run_operator_oracle_suite(size_t trials_per_op, uint64_t seed);

/// Commutativity and associativity of AND/OR, AND-over-OR distributivity,
/// SCALE composition and SCALE-over-OR distribution, within relative 1e-12.
SuiteReport run_algebraic_law_suite(size_t trials_per_law, uint64_t seed);

/// For each ranking family (unigram, interpolation smoothing, four-level
/// video mixture, stored priors, translation mixtures): random corpus and
/// specification trials checking that the compiled query retrieves exactly
/// the targets with positive direct score, scores within relative 1e-9.
SuiteReport run_lm_correspondence_suite(size_t trials_per_family, uint64_t seed);

/// The five optimizer alternatives against their original query forms via
/// randomized equivalence trials.
SuiteReport run_rewrite_pair_suite(size_t trials_per_pair, uint64_t seed);

/// save/load identity on random corpora with stored sets; scores must
/// survive the decimal text round trip bit-exactly.
SuiteReport run_index_roundtrip_suite(size_t corpora, uint64_t seed,
                                      const std::filesystem::path& scratch_dir);

/// Relative-tolerance comparison used throughout the suites.
bool approx_equal(double a, double b, double rel_tol);

/// Empty string when the sets match within tolerance; otherwise a one-line
/// description of the first mismatch.
std::string compare_region_sets(const RegionSet& actual, const RegionSet& expected,
                                double rel_tol);

}  // namespace regionlm::verify
