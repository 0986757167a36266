#pragma once

#include "regionlm/region.hpp"

namespace regionlm {

// The five scored-region operators. All are pure functions on canonical sets
// and return canonical sets.
//
// Containment is inclusive on both bounds: a region contains itself.

/// Regions of `left` that contain at least one region of `right`. Each
/// survivor is scored
///   left.score * sum(right.score * right.length) / left.length
/// over the contained right-hand regions, which for unit-score single-word
/// operands is exactly term count divided by region length.
RegionSet containing(const RegionSet& left, const RegionSet& right);

/// Regions of `left` contained by at least one region of `right`, scored
/// left.score * sum(right.score) over the containing regions. Nesting under
/// several right-hand regions adds their scores; this is what realizes
/// weighted mixtures of containing scopes.
RegionSet contained_by(const RegionSet& left, const RegionSet& right);

/// Every region rescored by factor * score. The factor must be positive and
/// finite; anything else would break the score-positivity invariant and is
/// rejected loudly.
RegionSet scale(double factor, const RegionSet& set);

/// Extent intersection; scores multiply.
RegionSet and_(const RegionSet& left, const RegionSet& right);

/// Extent union; a region present on both sides gets the sum of its scores.
RegionSet or_(const RegionSet& left, const RegionSet& right);

}  // namespace regionlm
