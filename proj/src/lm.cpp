#include "regionlm/lm.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "regionlm/errors.hpp"
#include "regionlm/text_util.hpp"

namespace regionlm {

MixturePtr make_term_prob(std::string token, std::string scope) {
    if (token.empty()) throw ValidationError("mixture term token is empty");
    if (scope.empty()) throw ValidationError("mixture term scope is empty");
    return std::make_shared<MixtureNode>(
        MixtureNode{TermProb{std::move(token), std::move(scope)}});
}

MixturePtr make_weighted_sum(std::vector<std::pair<double, MixturePtr>> parts) {
    if (parts.empty()) throw ValidationError("weighted sum has no parts");
    for (const auto& [weight, node] : parts) {
        if (!(weight > 0.0) || !std::isfinite(weight)) {
            throw ValidationError("mixture weight must be positive and finite, got "
                                  + format_double_shortest(weight));
        }
        if (node == nullptr) throw ValidationError("weighted sum has a null part");
    }
    return std::make_shared<MixtureNode>(MixtureNode{WeightedSum{std::move(parts)}});
}

void validate_spec(const LMSpec& spec) {
    if (spec.target.empty()) throw ValidationError("spec target is empty");
    if (spec.terms.empty()) throw ValidationError("spec has no terms");
    for (const auto& t : spec.terms) {
        if (t == nullptr) throw ValidationError("spec has a null term");
    }
    if (spec.prior && spec.prior->empty()) {
        throw ValidationError("spec prior name is empty");
    }
}

// ---------------------------------------------------------------------------
// JSON loading

namespace {

using nlohmann::json;

MixturePtr parse_mixture(const json& value, const std::string& path) {
    if (!value.is_object()) {
        throw SpecError(path + ": expected an object");
    }
    if (value.contains("term")) {
        if (!value["term"].is_string() || value["term"].get<std::string>().empty()) {
            throw SpecError(path + ".term: expected a non-empty string");
        }
        if (!value.contains("scope") || !value["scope"].is_string()
            || value["scope"].get<std::string>().empty()) {
            throw SpecError(path + ".scope: expected a non-empty string");
        }
        return make_term_prob(normalize_token(value["term"].get<std::string>()),
                              value["scope"].get<std::string>());
    }
    if (value.contains("sum")) {
        if (!value["sum"].is_array() || value["sum"].empty()) {
            throw SpecError(path + ".sum: expected a non-empty array");
        }
        std::vector<std::pair<double, MixturePtr>> parts;
        size_t i = 0;
        for (const auto& part : value["sum"]) {
            std::string part_path = path + ".sum[" + std::to_string(i) + "]";
            if (!part.is_object() || !part.contains("weight")
                || !part["weight"].is_number()) {
                throw SpecError(part_path + ".weight: expected a number");
            }
            double weight = part["weight"].get<double>();
            if (!(weight > 0.0) || !std::isfinite(weight)) {
                throw SpecError(part_path + ".weight: must be > 0");
            }
            if (!part.contains("node")) {
                throw SpecError(part_path + ".node: missing");
            }
            parts.emplace_back(weight, parse_mixture(part["node"], part_path + ".node"));
            ++i;
        }
        return make_weighted_sum(std::move(parts));
    }
    throw SpecError(path + ": expected either \"term\" or \"sum\"");
}

}  // namespace

LMSpec load_spec_json(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw SpecError(std::string("spec is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw SpecError("spec: expected a JSON object");
    if (!doc.contains("target") || !doc["target"].is_string()
        || doc["target"].get<std::string>().empty()) {
        throw SpecError("target: expected a non-empty string");
    }
    LMSpec spec;
    spec.target = doc["target"].get<std::string>();
    if (doc.contains("prior") && !doc["prior"].is_null()) {
        if (!doc["prior"].is_string() || doc["prior"].get<std::string>().empty()) {
            throw SpecError("prior: expected a set name or null");
        }
        spec.prior = doc["prior"].get<std::string>();
    }
    if (!doc.contains("terms") || !doc["terms"].is_array() || doc["terms"].empty()) {
        throw SpecError("terms: expected a non-empty array");
    }
    size_t i = 0;
    for (const auto& term : doc["terms"]) {
        spec.terms.push_back(parse_mixture(term, "terms[" + std::to_string(i) + "]"));
        ++i;
    }
    validate_spec(spec);
    return spec;
}

LMSpec load_spec_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open spec file: " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return load_spec_json(buffer.str());
}

// ---------------------------------------------------------------------------
// Compilation

namespace {

ExprPtr compile_mixture(const MixturePtr& node) {
    return std::visit(
        [&](const auto& n) -> ExprPtr {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, TermProb>) {
                return make_containing(make_element(n.scope), make_word(n.token));
            } else {
                ExprPtr acc;
                for (const auto& [weight, child] : n.parts) {
                    ExprPtr scaled = make_scale(weight, compile_mixture(child));
                    acc = acc ? make_or(std::move(acc), std::move(scaled))
                              : std::move(scaled);
                }
                return acc;
            }
        },
        node->node);
}

}  // namespace

ExprPtr compile_spec(const LMSpec& spec) {
    validate_spec(spec);
    ExprPtr body;
    for (const auto& term : spec.terms) {
        ExprPtr wrapped =
            make_contained_by(make_element(spec.target), compile_mixture(term));
        body = body ? make_and(std::move(body), std::move(wrapped))
                    : std::move(wrapped);
    }
    if (spec.prior) {
        body = make_and(make_stored(*spec.prior), std::move(body));
    }
    return body;
}

// ---------------------------------------------------------------------------
// Direct scoring

namespace {

// The unique occurrence of `scope` that contains (or equals) the target
// extent. Zero or several candidates both indicate the corpus falls outside
// the model's assumptions, and are reported rather than guessed around.
Extent resolve_scope_instance(const CorpusIndex& index, const std::string& scope,
                              const Region& target) {
    auto it = index.elements().find(scope);
    if (it == index.elements().end()) {
        throw EvalError("scope element <" + scope + "> does not occur in the corpus");
    }
    const Extent* found = nullptr;
    for (const Extent& e : it->second) {
        if (e.start <= target.start && e.end >= target.end) {
            if (found != nullptr) {
                throw EvalError("target region (" + std::to_string(target.start)
                                + ", " + std::to_string(target.end)
                                + ") lies inside multiple <" + scope
                                + "> instances");
            }
            found = &e;
        }
    }
    if (found == nullptr) {
        throw EvalError("target region (" + std::to_string(target.start) + ", "
                        + std::to_string(target.end)
                        + ") lies in no <" + scope + "> instance");
    }
    return *found;
}

double mixture_value(const MixturePtr& node, const CorpusIndex& index,
                     const Region& target) {
    return std::visit(
        [&](const auto& n) -> double {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, TermProb>) {
                Extent scope = resolve_scope_instance(index, n.scope, target);
                uint64_t count =
                    index.occurrence_count(n.token, scope.start, scope.end);
                return static_cast<double>(count)
                     / static_cast<double>(scope.end - scope.start);
            } else {
                double sum = 0.0;
                for (const auto& [weight, child] : n.parts) {
                    sum += weight * mixture_value(child, index, target);
                }
                return sum;
            }
        },
        node->node);
}

}  // namespace

double direct_score(const LMSpec& spec, const CorpusIndex& index,
                    const Region& target) {
    validate_spec(spec);
    double score = 1.0;
    if (spec.prior) {
        const RegionSet* prior = index.stored_set(*spec.prior);
        if (prior == nullptr) throw EvalError("unknown stored set $" + *spec.prior);
        const Region* r = prior->find(target.start, target.end);
        score = r == nullptr ? 0.0 : r->score;
    }
    for (const auto& term : spec.terms) {
        score *= mixture_value(term, index, target);
    }
    return score;
}

}  // namespace regionlm
