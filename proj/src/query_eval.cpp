#include <algorithm>

#include "regionlm/algebra.hpp"
#include "regionlm/errors.hpp"
#include "regionlm/query.hpp"

namespace regionlm {

RegionSet evaluate(const ExprPtr& expr, const CorpusIndex& index) {
    return std::visit(
        [&](const auto& node) -> RegionSet {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, WordLeaf>) {
                return index.word_regions(node.token);
            } else if constexpr (std::is_same_v<T, ElementLeaf>) {
                return index.element_regions(node.tag);
            } else if constexpr (std::is_same_v<T, StoredSetLeaf>) {
                const RegionSet* set = index.stored_set(node.name);
                if (set == nullptr) {
                    throw EvalError("unknown stored set $" + node.name);
                }
                return *set;
            } else if constexpr (std::is_same_v<T, ScaleNode>) {
                return scale(node.factor, evaluate(node.child, index));
            } else if constexpr (std::is_same_v<T, ContainingNode>) {
                return containing(evaluate(node.lhs, index),
                                  evaluate(node.rhs, index));
            } else if constexpr (std::is_same_v<T, ContainedByNode>) {
                return contained_by(evaluate(node.lhs, index),
                                    evaluate(node.rhs, index));
            } else if constexpr (std::is_same_v<T, AndNode>) {
                return and_(evaluate(node.lhs, index), evaluate(node.rhs, index));
            } else {
                return or_(evaluate(node.lhs, index), evaluate(node.rhs, index));
            }
        },
        expr->node);
}

RankedResult rank(const RegionSet& set, size_t k) {
    RankedResult result(set.begin(), set.end());
    std::stable_sort(result.begin(), result.end(),
                     [](const Region& a, const Region& b) {
                         if (a.score != b.score) return a.score > b.score;
                         if (a.start != b.start) return a.start < b.start;
                         return a.end < b.end;
                     });
    if (result.size() > k) result.resize(k);
    return result;
}

}  // namespace regionlm
