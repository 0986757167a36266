#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "regionlm/corpus_index.hpp"
#include "regionlm/region.hpp"

namespace regionlm {

struct QueryExpr;
using ExprPtr = std::shared_ptr<const QueryExpr>;

struct WordLeaf {
    std::string token;
};
struct ElementLeaf {
    std::string tag;
};
struct StoredSetLeaf {
    std::string name;
};
struct ScaleNode {
    double factor;
    ExprPtr child;
};
struct ContainingNode {
    ExprPtr lhs, rhs;
};
struct ContainedByNode {
    ExprPtr lhs, rhs;
};
struct AndNode {
    ExprPtr lhs, rhs;
};
struct OrNode {
    ExprPtr lhs, rhs;
};

/// Immutable query AST node. Rewrites share subtrees freely, so nodes are
/// handled through shared_ptr<const QueryExpr>.
struct QueryExpr {
    std::variant<WordLeaf, ElementLeaf, StoredSetLeaf, ScaleNode, ContainingNode,
                 ContainedByNode, AndNode, OrNode>
        node;
};

ExprPtr make_word(std::string token);
ExprPtr make_element(std::string tag);
ExprPtr make_stored(std::string name);
ExprPtr make_scale(double factor, ExprPtr child);
ExprPtr make_containing(ExprPtr lhs, ExprPtr rhs);
ExprPtr make_contained_by(ExprPtr lhs, ExprPtr rhs);
ExprPtr make_and(ExprPtr lhs, ExprPtr rhs);
ExprPtr make_or(ExprPtr lhs, ExprPtr rhs);

bool expr_equal(const ExprPtr& a, const ExprPtr& b);

/// Parses the textual query language:
///
///   expr  := or ; or := and ("OR" and)* ; and := cont ("AND" cont)* ;
///   cont  := unary (("CONTAINING" | "CONTAINED_BY") unary)* ;
///   unary := NUMBER "SCALE" unary | atom ;
///   atom  := WORD | "<" NAME ">" | "$" NAME | "(" expr ")" .
///
/// Binary operators are left-associative; precedence from tightest to
/// loosest is SCALE, CONTAINING/CONTAINED_BY, AND, OR. Operator keywords are
/// case-insensitive. WORD tokens are lowercased the same way the indexer
/// lowercases corpus words. A NUMBER not followed by SCALE is read as a
/// plain word, so numeric corpus tokens stay searchable.
ExprPtr parse_query(std::string_view text);

/// Fully parenthesized rendering; parse_query(to_query_string(e)) rebuilds
/// an identical tree.
std::string to_query_string(const ExprPtr& expr);

/// Structural recursion: leaves resolve through the index, inner nodes
/// through the algebra operators. Unknown $name raises EvalError; unknown
/// words and tags are simply empty sets.
RegionSet evaluate(const ExprPtr& expr, const CorpusIndex& index);

/// Result list ordered by (score desc, start asc, end asc).
using RankedResult = std::vector<Region>;

/// Top-k regions of a set under the ranking order; k past the set size
/// returns everything.
RankedResult rank(const RegionSet& set, size_t k);

}  // namespace regionlm
