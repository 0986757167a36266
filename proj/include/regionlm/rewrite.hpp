#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "regionlm/query.hpp"

namespace regionlm {

/// Every expression reachable from `expr` through the rewrite rule set,
/// deduplicated, the input itself excluded. The rules are score-preserving
/// under the usual corpus assumptions (non-nesting ranked elements, unique
/// enclosing scopes, priors stored over ranked-element extents):
///
///  - redundant-wrapper elimination:
///      <z> CONTAINED_BY X  ->  X          when X provably yields z-regions
///  - containment chaining (unit-score left operand):
///      (A CONTAINING x) AND (A CONTAINING y)       -> (A CONTAINING x) CONTAINING y
///      (A CONTAINED_BY x) AND (A CONTAINED_BY y)   -> (A CONTAINED_BY x) CONTAINED_BY y
///  - mixture hoisting over a shared term or a shared scope:
///      (a SCALE (E1 CONTAINING t)) OR (b SCALE (E2 CONTAINING t))
///          -> ((a SCALE E1) OR (b SCALE E2)) CONTAINING t
///      (a SCALE (E CONTAINING t1)) OR (b SCALE (E CONTAINING t2))
///          -> E CONTAINING ((a SCALE t1) OR (b SCALE t2))
///  - prior fusion:
///      $p AND (<z> CONTAINING ...chain)  ->  $p CONTAINING ...chain
///  - scale identity: 1 SCALE X -> X
///
/// Rule applications are bounded, so the closure always terminates.
std::vector<ExprPtr> rewrite_all(const ExprPtr& expr);

struct Counterexample {
    std::string corpus_xml;
    uint32_t start = 0;
    uint32_t end = 0;
    std::optional<double> lhs_score;  // nullopt: region absent on that side
    std::optional<double> rhs_score;

    std::string describe() const;
};

struct EquivalenceVerdict {
    bool equivalent = false;
    size_t trials_run = 0;
    std::optional<Counterexample> counterexample;
};

/// Empirically tests two expressions for equivalence on `trials` random
/// corpora satisfying the standard assumptions; scores must agree within
/// relative 1e-9 on identical supports. Stops at the first counterexample.
EquivalenceVerdict check_equivalent(const ExprPtr& lhs, const ExprPtr& rhs,
                                    size_t trials, uint64_t seed = 2024);

}  // namespace regionlm
