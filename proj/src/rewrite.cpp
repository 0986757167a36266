#include "regionlm/rewrite.hpp"

#include <cmath>
#include <deque>
#include <functional>
#include <set>

#include "regionlm/generator.hpp"
#include "regionlm/text_util.hpp"

namespace regionlm {

namespace {

template <class T>
const T* as(const ExprPtr& e) {
    return std::get_if<T>(&e->node);
}

// Tag of the element set an expression provably projects onto, empty when
// nothing can be concluded. CONTAINING/CONTAINED_BY project their left
// operand; AND intersects (either side suffices); OR needs agreement.
std::string result_tag(const ExprPtr& e) {
    if (const auto* el = as<ElementLeaf>(e)) return el->tag;
    if (const auto* sc = as<ScaleNode>(e)) return result_tag(sc->child);
    if (const auto* c = as<ContainingNode>(e)) return result_tag(c->lhs);
    if (const auto* cb = as<ContainedByNode>(e)) return result_tag(cb->lhs);
    if (const auto* a = as<AndNode>(e)) {
        std::string l = result_tag(a->lhs);
        if (!l.empty()) return l;
        return result_tag(a->rhs);
    }
    if (const auto* o = as<OrNode>(e)) {
        std::string l = result_tag(o->lhs);
        if (!l.empty() && l == result_tag(o->rhs)) return l;
    }
    return {};
}

// Conservative unit-score check for chaining rules: base element and word
// sets carry score 1 per region.
bool provably_unit(const ExprPtr& e) {
    return as<ElementLeaf>(e) != nullptr || as<WordLeaf>(e) != nullptr;
}

using Rule = std::function<std::optional<ExprPtr>(const ExprPtr&)>;

// <z> CONTAINED_BY X -> X when X provably yields z-regions.
std::optional<ExprPtr> rule_wrapper_elim(const ExprPtr& e) {
    const auto* cb = as<ContainedByNode>(e);
    if (cb == nullptr) return std::nullopt;
    const auto* el = as<ElementLeaf>(cb->lhs);
    if (el == nullptr) return std::nullopt;
    if (result_tag(cb->rhs) != el->tag) return std::nullopt;
    return cb->rhs;
}

// (A op x) AND (A op y) -> (A op x) op y for op in {CONTAINING,
// CONTAINED_BY}, when A has unit scores.
std::optional<ExprPtr> rule_chain(const ExprPtr& e) {
    const auto* conj = as<AndNode>(e);
    if (conj == nullptr) return std::nullopt;
    if (const auto* l = as<ContainingNode>(conj->lhs)) {
        const auto* r = as<ContainingNode>(conj->rhs);
        if (r != nullptr && expr_equal(l->lhs, r->lhs) && provably_unit(l->lhs)) {
            return make_containing(conj->lhs, r->rhs);
        }
    }
    if (const auto* l = as<ContainedByNode>(conj->lhs)) {
        const auto* r = as<ContainedByNode>(conj->rhs);
        if (r != nullptr && expr_equal(l->lhs, r->lhs) && provably_unit(l->lhs)) {
            return make_contained_by(conj->lhs, r->rhs);
        }
    }
    return std::nullopt;
}

struct MixtureLeaf {
    double weight = 1.0;  // 1 when the OR operand carries no SCALE
    bool scaled = false;
    ExprPtr scope;
    ExprPtr term;
};

// Flattens a left-associative OR chain of (optionally scaled) CONTAINING
// leaves; empty result when any operand has a different shape.
std::vector<MixtureLeaf> flatten_mixture(const ExprPtr& e) {
    if (const auto* o = as<OrNode>(e)) {
        auto lhs = flatten_mixture(o->lhs);
        if (lhs.empty()) return {};
        auto rhs = flatten_mixture(o->rhs);
        if (rhs.empty()) return {};
        lhs.insert(lhs.end(), rhs.begin(), rhs.end());
        return lhs;
    }
    MixtureLeaf leaf;
    ExprPtr body = e;
    if (const auto* sc = as<ScaleNode>(e)) {
        leaf.weight = sc->factor;
        leaf.scaled = true;
        body = sc->child;
    }
    const auto* c = as<ContainingNode>(body);
    if (c == nullptr) return {};
    leaf.scope = c->lhs;
    leaf.term = c->rhs;
    return {leaf};
}

ExprPtr or_fold(std::vector<ExprPtr> parts) {
    ExprPtr acc;
    for (auto& p : parts) {
        acc = acc ? make_or(std::move(acc), std::move(p)) : std::move(p);
    }
    return acc;
}

// (a SCALE (E1 CONTAINING t)) OR (b SCALE (E2 CONTAINING t)) OR ...
//   -> ((a SCALE E1) OR (b SCALE E2) OR ...) CONTAINING t
std::optional<ExprPtr> rule_hoist_shared_term(const ExprPtr& e) {
    if (as<OrNode>(e) == nullptr) return std::nullopt;
    auto leaves = flatten_mixture(e);
    if (leaves.size() < 2) return std::nullopt;
    for (size_t i = 1; i < leaves.size(); ++i) {
        if (!expr_equal(leaves[i].term, leaves[0].term)) return std::nullopt;
    }
    std::vector<ExprPtr> scopes;
    scopes.reserve(leaves.size());
    for (const auto& leaf : leaves) {
        scopes.push_back(leaf.scaled ? make_scale(leaf.weight, leaf.scope)
                                     : leaf.scope);
    }
    return make_containing(or_fold(std::move(scopes)), leaves[0].term);
}

// (a SCALE (E CONTAINING t1)) OR (b SCALE (E CONTAINING t2)) OR ...
//   -> E CONTAINING ((a SCALE t1) OR (b SCALE t2) OR ...)
std::optional<ExprPtr> rule_hoist_shared_scope(const ExprPtr& e) {
    if (as<OrNode>(e) == nullptr) return std::nullopt;
    auto leaves = flatten_mixture(e);
    if (leaves.size() < 2) return std::nullopt;
    for (size_t i = 1; i < leaves.size(); ++i) {
        if (!expr_equal(leaves[i].scope, leaves[0].scope)) return std::nullopt;
    }
    std::vector<ExprPtr> terms;
    terms.reserve(leaves.size());
    for (const auto& leaf : leaves) {
        terms.push_back(leaf.scaled ? make_scale(leaf.weight, leaf.term)
                                    : leaf.term);
    }
    return make_containing(leaves[0].scope, or_fold(std::move(terms)));
}

// $p AND (<z> CONTAINING ...) -> $p CONTAINING ..., substituting the stored
// set for the element at the base of the CONTAINING chain. Valid when the
// stored extents are ranked-element extents, which is how priors are stored.
ExprPtr substitute_chain_base(const ExprPtr& chain, const ExprPtr& replacement) {
    if (const auto* c = as<ContainingNode>(chain)) {
        if (as<ElementLeaf>(c->lhs) != nullptr) {
            return make_containing(replacement, c->rhs);
        }
        ExprPtr inner = substitute_chain_base(c->lhs, replacement);
        if (inner == nullptr) return nullptr;
        return make_containing(std::move(inner), c->rhs);
    }
    return nullptr;
}

std::optional<ExprPtr> rule_prior_fusion(const ExprPtr& e) {
    const auto* conj = as<AndNode>(e);
    if (conj == nullptr) return std::nullopt;
    const ExprPtr* stored_side = nullptr;
    const ExprPtr* chain_side = nullptr;
    if (as<StoredSetLeaf>(conj->lhs) != nullptr) {
        stored_side = &conj->lhs;
        chain_side = &conj->rhs;
    } else if (as<StoredSetLeaf>(conj->rhs) != nullptr) {
        stored_side = &conj->rhs;
        chain_side = &conj->lhs;
    } else {
        return std::nullopt;
    }
    ExprPtr fused = substitute_chain_base(*chain_side, *stored_side);
    if (fused == nullptr) return std::nullopt;
    return fused;
}

std::optional<ExprPtr> rule_scale_identity(const ExprPtr& e) {
    const auto* sc = as<ScaleNode>(e);
    if (sc == nullptr || sc->factor != 1.0) return std::nullopt;
    return sc->child;
}

const std::vector<Rule>& rules() {
    static const std::vector<Rule> all = {
        rule_wrapper_elim,    rule_chain,        rule_hoist_shared_term,
        rule_hoist_shared_scope, rule_prior_fusion, rule_scale_identity,
    };
    return all;
}

// All expressions obtained by applying one rule at one node of `e`.
void one_step_rewrites(const ExprPtr& e, std::vector<ExprPtr>& out) {
    for (const Rule& rule : rules()) {
        if (auto rewritten = rule(e)) out.push_back(*rewritten);
    }
    auto rebuild = [&](const ExprPtr& child,
                       const std::function<ExprPtr(ExprPtr)>& wrap) {
        std::vector<ExprPtr> inner;
        one_step_rewrites(child, inner);
        for (auto& i : inner) out.push_back(wrap(std::move(i)));
    };
    std::visit(
        [&](const auto& node) {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, ScaleNode>) {
                rebuild(node.child, [&](ExprPtr c) {
                    return make_scale(node.factor, std::move(c));
                });
            } else if constexpr (std::is_same_v<T, ContainingNode>) {
                rebuild(node.lhs, [&](ExprPtr c) {
                    return make_containing(std::move(c), node.rhs);
                });
                rebuild(node.rhs, [&](ExprPtr c) {
                    return make_containing(node.lhs, std::move(c));
                });
            } else if constexpr (std::is_same_v<T, ContainedByNode>) {
                rebuild(node.lhs, [&](ExprPtr c) {
                    return make_contained_by(std::move(c), node.rhs);
                });
                rebuild(node.rhs, [&](ExprPtr c) {
                    return make_contained_by(node.lhs, std::move(c));
                });
            } else if constexpr (std::is_same_v<T, AndNode>) {
                rebuild(node.lhs, [&](ExprPtr c) {
                    return make_and(std::move(c), node.rhs);
                });
                rebuild(node.rhs, [&](ExprPtr c) {
                    return make_and(node.lhs, std::move(c));
                });
            } else if constexpr (std::is_same_v<T, OrNode>) {
                rebuild(node.lhs, [&](ExprPtr c) {
                    return make_or(std::move(c), node.rhs);
                });
                rebuild(node.rhs, [&](ExprPtr c) {
                    return make_or(node.lhs, std::move(c));
                });
            }
        },
        e->node);
}

}  // namespace

std::vector<ExprPtr> rewrite_all(const ExprPtr& expr) {
    constexpr size_t kMaxResults = 512;

    std::set<std::string> seen{to_query_string(expr)};
    std::vector<ExprPtr> results;
    std::deque<ExprPtr> frontier{expr};

    while (!frontier.empty() && results.size() < kMaxResults) {
        ExprPtr current = frontier.front();
        frontier.pop_front();
        std::vector<ExprPtr> next;
        one_step_rewrites(current, next);
        for (auto& candidate : next) {
            std::string key = to_query_string(candidate);
            if (!seen.insert(std::move(key)).second) continue;
            results.push_back(candidate);
            frontier.push_back(std::move(candidate));
            if (results.size() >= kMaxResults) break;
        }
    }
    return results;
}

std::string Counterexample::describe() const {
    std::string out = "region (" + std::to_string(start) + ", "
                    + std::to_string(end) + "): lhs ";
    out += lhs_score ? format_double_shortest(*lhs_score) : "absent";
    out += ", rhs ";
    out += rhs_score ? format_double_shortest(*rhs_score) : "absent";
    out += "\ncorpus: " + corpus_xml;
    return out;
}

EquivalenceVerdict check_equivalent(const ExprPtr& lhs, const ExprPtr& rhs,
                                    size_t trials, uint64_t seed) {
    constexpr double kRelTol = 1e-9;

    CorpusProfile profile = profile_for_queries({lhs, rhs});
    std::vector<std::string> stored = collect_stored_sets(lhs);
    for (auto& name : collect_stored_sets(rhs)) stored.push_back(name);

    Rng rng(seed);
    EquivalenceVerdict verdict;
    for (size_t t = 0; t < trials; ++t) {
        GeneratedCorpus corpus = generate_corpus(profile, rng);
        for (const std::string& name : stored) {
            corpus.index.register_stored_set(
                name, generate_prior_set(corpus.index, profile.chain.back(), rng));
        }
        RegionSet a = evaluate(lhs, corpus.index);
        RegionSet b = evaluate(rhs, corpus.index);
        ++verdict.trials_run;

        auto fail = [&](const Region& r, std::optional<double> sa,
                        std::optional<double> sb) {
            verdict.equivalent = false;
            verdict.counterexample =
                Counterexample{corpus.xml, r.start, r.end, sa, sb};
        };

        for (const Region& ra : a) {
            const Region* rb = b.find(ra.start, ra.end);
            if (rb == nullptr) {
                fail(ra, ra.score, std::nullopt);
                return verdict;
            }
            if (std::abs(ra.score - rb->score)
                > kRelTol * std::max(std::abs(ra.score), std::abs(rb->score))) {
                fail(ra, ra.score, rb->score);
                return verdict;
            }
        }
        for (const Region& rb : b) {
            if (a.find(rb.start, rb.end) == nullptr) {
                fail(rb, std::nullopt, rb.score);
                return verdict;
            }
        }
    }
    verdict.equivalent = true;
    return verdict;
}

}  // namespace regionlm
