#include "regionlm/region.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "regionlm/errors.hpp"
#include "regionlm/text_util.hpp"

namespace regionlm {

void validate_region(const Region& r) {
    if (r.start < 1 || r.start >= r.end) {
        throw ValidationError("invalid region extent (" + std::to_string(r.start)
                              + ", " + std::to_string(r.end)
                              + "): need 1 <= start < end");
    }
    if (!(r.score > 0.0) || !std::isfinite(r.score)) {
        throw ValidationError("invalid region score "
                              + format_double_shortest(r.score)
                              + ": need a positive finite value");
    }
}

static bool extent_less(const Region& a, const Region& b) {
    if (a.start != b.start) return a.start < b.start;
    return a.end < b.end;
}

RegionSet RegionSet::canonical(std::vector<Region> raw) {
    for (const Region& r : raw) validate_region(r);
    std::sort(raw.begin(), raw.end(), extent_less);

    // Duplicate extents merge by score summation, the same discipline the OR
    // operator applies.
    std::vector<Region> merged;
    merged.reserve(raw.size());
    for (const Region& r : raw) {
        if (!merged.empty() && merged.back().start == r.start
            && merged.back().end == r.end) {
            merged.back().score += r.score;
        } else {
            merged.push_back(r);
        }
    }
    RegionSet set;
    set.regions_ = std::move(merged);
    return set;
}

RegionSet RegionSet::from_sorted(std::vector<Region> sorted) {
#ifndef NDEBUG
    for (size_t i = 1; i < sorted.size(); ++i) {
        assert(extent_less(sorted[i - 1], sorted[i]));
    }
#endif
    RegionSet set;
    set.regions_ = std::move(sorted);
    return set;
}

const Region* RegionSet::find(uint32_t start, uint32_t end) const {
    Region probe{start, end, 1.0};
    auto it = std::lower_bound(regions_.begin(), regions_.end(), probe, extent_less);
    if (it != regions_.end() && it->start == start && it->end == end) return &*it;
    return nullptr;
}

bool RegionSet::same_extents(const RegionSet& other) const {
    if (regions_.size() != other.regions_.size()) return false;
    for (size_t i = 0; i < regions_.size(); ++i) {
        if (regions_[i].start != other.regions_[i].start
            || regions_[i].end != other.regions_[i].end) {
            return false;
        }
    }
    return true;
}

std::string RegionSet::to_tsv() const {
    std::string out;
    for (const Region& r : regions_) {
        out += std::to_string(r.start);
        out += '\t';
        out += std::to_string(r.end);
        out += '\t';
        out += format_double_shortest(r.score);
        out += '\n';
    }
    return out;
}

}  // namespace regionlm
