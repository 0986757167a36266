#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "regionlm/corpus_index.hpp"
#include "regionlm/query.hpp"

namespace regionlm {

struct MixtureNode;
using MixturePtr = std::shared_ptr<const MixtureNode>;

/// P(token | scope): occurrences of the token inside the enclosing scope
/// element, divided by that element's length. Scope "root" is the whole
/// collection.
struct TermProb {
    std::string token;
    std::string scope;
};

/// Positive-weighted sum of sub-mixtures. Weights carry smoothing
/// coefficients, level-mixture weights, and translation probabilities; they
/// are not required to sum to one and are never normalized.
struct WeightedSum {
    std::vector<std::pair<double, MixturePtr>> parts;
};

struct MixtureNode {
    std::variant<TermProb, WeightedSum> node;
};

MixturePtr make_term_prob(std::string token, std::string scope);
MixturePtr make_weighted_sum(std::vector<std::pair<double, MixturePtr>> parts);

/// A ranking specification: rank occurrences of `target` by the product of
/// per-term mixture values, optionally multiplied by a stored prior.
struct LMSpec {
    std::string target;
    std::optional<std::string> prior;
    std::vector<MixturePtr> terms;
};

void validate_spec(const LMSpec& spec);

/// JSON form:
///   {"target": tag, "prior": name-or-null, "terms": [node, ...]}
///   node := {"term": token, "scope": tag}
///         | {"sum": [{"weight": number, "node": node}, ...]}
/// Schema violations raise SpecError naming the offending field.
LMSpec load_spec_json(const std::string& json_text);
LMSpec load_spec_file(const std::filesystem::path& path);

/// Rewrites the ranking arithmetic into a region query:
///   P(t|s)      ->  (<s> CONTAINING t)
///   w * x       ->  (w SCALE x)
///   x + y       ->  (x OR y)
///   product     ->  AND
/// and every per-term expression is wrapped as
///   <target> CONTAINED_BY (term expression),
/// with the prior, when present, AND-ed in front. Deterministic: one spec,
/// one tree.
ExprPtr compile_spec(const LMSpec& spec);

/// Direct arithmetic evaluation of the specification for one target region,
/// bypassing the algebra entirely. This is the independent scoring oracle:
/// term probabilities come from position counts within the unique enclosing
/// scope instance, mixtures and products are evaluated literally, and the
/// prior contributes the stored score of the region (0 when absent).
/// A target lacking a unique enclosing instance of some scope is an error.
double direct_score(const LMSpec& spec, const CorpusIndex& index,
                    const Region& target);

}  // namespace regionlm
