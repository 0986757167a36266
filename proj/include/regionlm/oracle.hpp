#pragma once

#include <string_view>

#include "regionlm/region.hpp"

namespace regionlm::oracle {

// Naive reference implementations used to verify the engine. Each operator
// is the most literal translation of its relational definition: nested loops
// over all pairs, explicit grouping, no sorting or index tricks. They are
// intentionally independent of the algebra in src/algebra.cpp.

RegionSet naive_containing(const RegionSet& r1, const RegionSet& r2);
RegionSet naive_contained_by(const RegionSet& r1, const RegionSet& r2);
RegionSet naive_scale(double factor, const RegionSet& r);
RegionSet naive_and(const RegionSet& r1, const RegionSet& r2);
RegionSet naive_or(const RegionSet& r1, const RegionSet& r2);

/// Recounts occurrences of `token` whose word position falls in
/// [start, end), straight from corpus text, bypassing the index entirely.
/// Markup is skipped by dropping '<'...'>' spans; entities are not decoded,
/// which covers every corpus the test generators produce.
int naive_count(std::string_view corpus_text, std::string_view token,
                uint32_t start, uint32_t end);

}  // namespace regionlm::oracle
