#include "regionlm/algebra.hpp"

#include <algorithm>
#include <cmath>

#include "regionlm/errors.hpp"
#include "regionlm/text_util.hpp"

namespace regionlm {

RegionSet containing(const RegionSet& left, const RegionSet& right) {
    std::vector<Region> out;
    const auto& rs = right.regions();
    for (const Region& a : left) {
        // Contained candidates start within [a.start, a.end); the list is
        // sorted by start, so binary-search the lower edge and scan.
        auto it = std::lower_bound(
            rs.begin(), rs.end(), a.start,
            [](const Region& r, uint32_t pos) { return r.start < pos; });
        double weighted = 0.0;
        bool any = false;
        for (; it != rs.end() && it->start < a.end; ++it) {
            if (it->end <= a.end) {
                weighted += it->score * static_cast<double>(it->length());
                any = true;
            }
        }
        if (any) {
            out.push_back({a.start, a.end,
                           a.score * weighted / static_cast<double>(a.length())});
        }
    }
    return RegionSet::from_sorted(std::move(out));
}

namespace {

// Fenwick trees over compressed right-hand end positions, so the containers
// of each left region (start <= a.start, end >= a.end) can be summed in
// O(log n) during one sweep by start. Ranks are reversed (largest end first)
// so an "end >= bound" query is a prefix sum of positive terms; subtracting
// a prefix from the grand total instead would cancel precision away whenever
// the eligible sum is small.
class EndSums {
  public:
    explicit EndSums(const std::vector<Region>& regions) {
        ends_.reserve(regions.size());
        for (const Region& r : regions) ends_.push_back(r.end);
        std::sort(ends_.begin(), ends_.end());
        ends_.erase(std::unique(ends_.begin(), ends_.end()), ends_.end());
        sums_.assign(ends_.size() + 1, 0.0);
        counts_.assign(ends_.size() + 1, 0);
    }

    void add(uint32_t end, double score) {
        for (size_t i = reversed_rank(end) + 1; i < sums_.size();
             i += i & (~i + 1)) {
            sums_[i] += score;
            counts_[i] += 1;
        }
    }

    // Sum and count of added entries with end >= bound.
    std::pair<double, size_t> at_least(uint32_t bound) const {
        auto it = std::lower_bound(ends_.begin(), ends_.end(), bound);
        if (it == ends_.end()) return {0.0, 0};
        size_t last_rank = reversed_rank(*it);  // smallest eligible end
        double sum = 0.0;
        size_t count = 0;
        for (size_t i = last_rank + 1; i > 0; i -= i & (~i + 1)) {
            sum += sums_[i];
            count += counts_[i];
        }
        return {sum, count};
    }

  private:
    size_t reversed_rank(uint32_t end) const {
        auto it = std::lower_bound(ends_.begin(), ends_.end(), end);
        return ends_.size() - 1
             - static_cast<size_t>(it - ends_.begin());
    }

    std::vector<uint32_t> ends_;
    std::vector<double> sums_;
    std::vector<uint32_t> counts_;
};

}  // namespace

RegionSet contained_by(const RegionSet& left, const RegionSet& right) {
    std::vector<Region> out;
    const auto& rs = right.regions();
    EndSums active(rs);
    size_t next = 0;
    for (const Region& a : left) {
        while (next < rs.size() && rs[next].start <= a.start) {
            active.add(rs[next].end, rs[next].score);
            ++next;
        }
        auto [sum, count] = active.at_least(a.end);
        if (count > 0) out.push_back({a.start, a.end, a.score * sum});
    }
    return RegionSet::from_sorted(std::move(out));
}

RegionSet scale(double factor, const RegionSet& set) {
    if (!(factor > 0.0) || !std::isfinite(factor)) {
        throw ValidationError("SCALE factor must be a positive finite number, got "
                              + format_double_shortest(factor));
    }
    std::vector<Region> out;
    out.reserve(set.size());
    for (const Region& r : set) out.push_back({r.start, r.end, factor * r.score});
    return RegionSet::from_sorted(std::move(out));
}

static int extent_cmp(const Region& a, const Region& b) {
    if (a.start != b.start) return a.start < b.start ? -1 : 1;
    if (a.end != b.end) return a.end < b.end ? -1 : 1;
    return 0;
}

RegionSet and_(const RegionSet& left, const RegionSet& right) {
    std::vector<Region> out;
    const auto& ls = left.regions();
    const auto& rs = right.regions();
    size_t i = 0, j = 0;
    while (i < ls.size() && j < rs.size()) {
        int c = extent_cmp(ls[i], rs[j]);
        if (c < 0) {
            ++i;
        } else if (c > 0) {
            ++j;
        } else {
            out.push_back({ls[i].start, ls[i].end, ls[i].score * rs[j].score});
            ++i;
            ++j;
        }
    }
    return RegionSet::from_sorted(std::move(out));
}

RegionSet or_(const RegionSet& left, const RegionSet& right) {
    std::vector<Region> out;
    const auto& ls = left.regions();
    const auto& rs = right.regions();
    out.reserve(ls.size() + rs.size());
    size_t i = 0, j = 0;
    while (i < ls.size() && j < rs.size()) {
        int c = extent_cmp(ls[i], rs[j]);
        if (c < 0) {
            out.push_back(ls[i++]);
        } else if (c > 0) {
            out.push_back(rs[j++]);
        } else {
            out.push_back({ls[i].start, ls[i].end, ls[i].score + rs[j].score});
            ++i;
            ++j;
        }
    }
    out.insert(out.end(), ls.begin() + i, ls.end());
    out.insert(out.end(), rs.begin() + j, rs.end());
    return RegionSet::from_sorted(std::move(out));
}

}  // namespace regionlm
