#include "regionlm/oracle.hpp"

#include <cctype>
#include <map>
#include <utility>
#include <vector>

#include "regionlm/errors.hpp"

namespace regionlm::oracle {

using Extent = std::pair<uint32_t, uint32_t>;

static RegionSet grouped(const std::map<Extent, double>& groups) {
    std::vector<Region> out;
    out.reserve(groups.size());
    for (const auto& [extent, score] : groups) {
        out.push_back({extent.first, extent.second, score});
    }
    return RegionSet::canonical(std::move(out));
}

RegionSet naive_containing(const RegionSet& r1, const RegionSet& r2) {
    // SELECT R1.start, R1.end, R1.score * SUM((R2.score * (R2.end - R2.start))
    //   / (R1.end - R1.start))
    // WHERE R1.start <= R2.start AND R1.end >= R2.end
    // GROUP BY R1.start, R1.end, R1.score
    std::map<Extent, double> groups;
    for (const Region& a : r1) {
        bool matched = false;
        double sum = 0.0;
        for (const Region& b : r2) {
            if (a.start <= b.start && a.end >= b.end) {
                sum += (b.score * static_cast<double>(b.end - b.start))
                     / static_cast<double>(a.end - a.start);
                matched = true;
            }
        }
        if (matched) groups[{a.start, a.end}] = a.score * sum;
    }
    return grouped(groups);
}

RegionSet naive_contained_by(const RegionSet& r1, const RegionSet& r2) {
    // SELECT R1.start, R1.end, R1.score * SUM(R2.score)
    // WHERE R1.start >= R2.start AND R1.end <= R2.end
    // GROUP BY R1.start, R1.end, R1.score
    std::map<Extent, double> groups;
    for (const Region& a : r1) {
        bool matched = false;
        double sum = 0.0;
        for (const Region& b : r2) {
            if (a.start >= b.start && a.end <= b.end) {
                sum += b.score;
                matched = true;
            }
        }
        if (matched) groups[{a.start, a.end}] = a.score * sum;
    }
    return grouped(groups);
}

RegionSet naive_scale(double factor, const RegionSet& r) {
    if (!(factor > 0.0)) throw ValidationError("oracle: SCALE factor must be > 0");
    std::map<Extent, double> groups;
    for (const Region& a : r) groups[{a.start, a.end}] = factor * a.score;
    return grouped(groups);
}

RegionSet naive_and(const RegionSet& r1, const RegionSet& r2) {
    std::map<Extent, double> groups;
    for (const Region& a : r1) {
        for (const Region& b : r2) {
            if (a.start == b.start && a.end == b.end) {
                groups[{a.start, a.end}] = a.score * b.score;
            }
        }
    }
    return grouped(groups);
}

RegionSet naive_or(const RegionSet& r1, const RegionSet& r2) {
    // UNION ALL, then GROUP BY (start, end) summing scores.
    std::vector<Region> all;
    for (const Region& a : r1) all.push_back(a);
    for (const Region& b : r2) all.push_back(b);
    std::map<Extent, double> groups;
    for (const Region& r : all) groups[{r.start, r.end}] += r.score;
    return grouped(groups);
}

int naive_count(std::string_view corpus_text, std::string_view token,
                uint32_t start, uint32_t end) {
    // Independent re-tokenization: walk the raw bytes, skip markup, build
    // words one character at a time, and compare against the target token.
    int count = 0;
    uint32_t position = 0;
    std::string word;
    bool in_tag = false;

    auto close_word = [&]() {
        if (word.empty()) return;
        ++position;
        if (position >= start && position < end && word == token) ++count;
        word.clear();
    };

    for (char ch : corpus_text) {
        unsigned char c = static_cast<unsigned char>(ch);
        if (in_tag) {
            if (c == '>') in_tag = false;
            continue;
        }
        if (c == '<') {
            close_word();
            in_tag = true;
            continue;
        }
        if (std::isalnum(c) || c >= 0x80) {
            word.push_back(static_cast<char>(std::tolower(c)));
        } else {
            close_word();
        }
    }
    close_word();
    return count;
}

}  // namespace regionlm::oracle
