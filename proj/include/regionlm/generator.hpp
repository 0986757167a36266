#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "regionlm/corpus_index.hpp"
#include "regionlm/lm.hpp"
#include "regionlm/query.hpp"

namespace regionlm {

/// Seeded RNG wrapper. Draws go through explicit modulo/shift arithmetic so
/// a given seed produces the same stream on every platform.
class Rng {
  public:
    explicit Rng(uint64_t seed) : engine_(seed) {}

    uint64_t below(uint64_t n) { return engine_() % n; }

    int range(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(below(static_cast<uint64_t>(hi - lo + 1)));
    }

    double unit() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double positive(double lo, double hi) { return lo + (hi - lo) * unit(); }

    bool chance(double p) { return unit() < p; }

    template <class T>
    const T& pick(const std::vector<T>& v) {
        return v[below(v.size())];
    }

  private:
    std::mt19937_64 engine_;
};

/// Shape of the synthetic corpora used for property trials: a chain of
/// element tags nested under the collection root, the innermost level being
/// the ranked target. The generated structure keeps target extents
/// non-nesting and gives every target exactly one enclosing instance per
/// ancestor tag, the regime all ranking correspondences assume.
struct CorpusProfile {
    std::vector<std::string> chain = {"doc"};
    std::vector<std::string> focus_words = {"db", "ir"};
    std::vector<std::string> filler_words = {"xx", "yy", "zz", "qq"};
    int min_children = 1;
    int max_children = 3;
    int min_leaf_words = 0;
    int max_leaf_words = 5;
    double focus_probability = 0.6;
    bool words_between_children = true;
};

struct GeneratedCorpus {
    std::string xml;
    CorpusIndex index;
};

GeneratedCorpus generate_corpus(const CorpusProfile& profile, Rng& rng);

/// A random stored set over a subset of the target-tag extents, scores in
/// (0, 1]. At least one extent when any target exists.
RegionSet generate_prior_set(const CorpusIndex& index, const std::string& target_tag,
                             Rng& rng);

/// A random canonical set with at most `max_regions` regions over positions
/// 1..max_position, arbitrary positive scores. Used for operator trials.
RegionSet generate_region_set(Rng& rng, int max_regions = 50,
                              int max_position = 100);

/// Builds a profile able to exercise a query expression: tags, stored sets
/// and word leaves are collected from the expression and mapped onto a
/// nesting chain (video/scene/shot when present, otherwise the mentioned
/// tags in first-mention order).
CorpusProfile profile_for_queries(const std::vector<ExprPtr>& exprs);

/// Names of stored sets referenced anywhere in the expression.
std::vector<std::string> collect_stored_sets(const ExprPtr& expr);

}  // namespace regionlm
