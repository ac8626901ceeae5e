#include "premsel/knn/features.hpp"

namespace premsel::knn {

namespace {

/// Returns the normalized rendering while recording features.
std::string visit(const fol::Term& t, FeatureSet& out) {
  if (t.is_variable()) {
    ++out[kVariableFeature];
    return kVariableFeature;
  }
  std::string rendered = t.name;
  if (!t.args.empty()) {
    rendered += '(';
    for (std::size_t i = 0; i < t.args.size(); ++i) {
      if (i) rendered += ',';
      rendered += visit(t.args[i], out);
    }
    rendered += ')';
    ++out[rendered];
  }
  ++out[t.name];
  return rendered;
}

void visit(const fol::Formula& f, FeatureSet& out) {
  switch (f.kind) {
    case fol::Formula::Kind::Quantified:
    case fol::Formula::Kind::Binary:
    case fol::Formula::Kind::Negation:
      for (const fol::Formula& c : f.children) visit(c, out);
      break;
    case fol::Formula::Kind::Atom:
      visit(fol::Term::function(f.symbol, f.args), out);
      break;
    case fol::Formula::Kind::Equality:
      ++out["="];
      visit(f.args[0], out);
      visit(f.args[1], out);
      break;
  }
}

}  // namespace

FeatureSet extract_features(const fol::Formula& formula) {
  FeatureSet out;
  visit(formula, out);
  return out;
}

}  // namespace premsel::knn
