#pragma once

#include <cstddef>
#include <map>
#include <string>

#include "premsel/fol/statement.hpp"

namespace premsel::knn {

/// Sparse feature multiset: feature string -> count.
using FeatureSet = std::map<std::string, std::size_t>;

/// Placeholder that replaces every variable in rendered subterms.
inline constexpr const char* kVariableFeature = "V";

/// Symbols (function and predicate names, "=" for equality atoms) plus every
/// subterm and atom rendered with variables replaced by `V`. Each variable
/// occurrence also contributes `V`. A constant contributes its name once.
FeatureSet extract_features(const fol::Formula& formula);
inline FeatureSet extract_features(const fol::Statement& statement) { return extract_features(statement.formula); }

}  // namespace premsel::knn
