#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace regionlm {

/// One scored contiguous extent of word positions. `start` is the position
/// of the first word in the extent, `end` the position directly following
/// the last word, so the extent (i, i+1) covers exactly the word at i.
struct Region {
    uint32_t start = 0;
    uint32_t end = 0;
    double score = 1.0;

    uint32_t length() const { return end - start; }

    friend bool operator==(const Region& a, const Region& b) {
        return a.start == b.start && a.end == b.end && a.score == b.score;
    }
};

/// Throws ValidationError unless 1 <= start < end and score is a positive
/// finite number.
void validate_region(const Region& r);

/// A canonical set of scored regions: at most one region per (start, end)
/// pair, held in ascending (start, end) order. Every operator consumes and
/// produces this form.
class RegionSet {
  public:
    RegionSet() = default;

    /// Canonicalizes an arbitrary list: validates each region, sorts, and
    /// merges duplicate (start, end) pairs by summing their scores.
    static RegionSet canonical(std::vector<Region> raw);

    /// Adopts regions already in sorted unique order. Used by the operators,
    /// which preserve canonical form by construction.
    static RegionSet from_sorted(std::vector<Region> sorted);

    const std::vector<Region>& regions() const { return regions_; }
    size_t size() const { return regions_.size(); }
    bool empty() const { return regions_.empty(); }

    std::vector<Region>::const_iterator begin() const { return regions_.begin(); }
    std::vector<Region>::const_iterator end() const { return regions_.end(); }

    /// Binary search by extent; nullptr when absent.
    const Region* find(uint32_t start, uint32_t end) const;

    bool same_extents(const RegionSet& other) const;

    /// Debug/test text form: one `start<TAB>end<TAB>score` line per region,
    /// scores in shortest round-trip decimal.
    std::string to_tsv() const;

    friend bool operator==(const RegionSet& a, const RegionSet& b) {
        return a.regions_ == b.regions_;
    }

  private:
    std::vector<Region> regions_;
};

}  // namespace regionlm
