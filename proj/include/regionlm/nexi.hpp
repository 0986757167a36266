#pragma once

#include <string_view>

#include "regionlm/query.hpp"

namespace regionlm {

/// Translates a small NEXI subset into a region query:
///
///   path   := "//" NAME pred? ("//" NAME pred?)?
///   pred   := "[about(" target "," words ")]"
///   target := "." | ".//" NAME | ".//(" NAME ("|" NAME)* ")"
///   words  := one or more terms
///
/// A step's about() filter becomes a CONTAINING chain over its words, left
/// to right; a ".//x" target scopes the chain inside the step element via a
/// further CONTAINING; the trailing step of a two-step path is ranked inside
/// the outer filtered step with CONTAINED_BY. Anything outside this subset
/// raises QuerySyntaxError naming the unsupported construct.
ExprPtr translate_nexi(std::string_view query);

}  // namespace regionlm
