#pragma once

#include <string>
#include <vector>

namespace premsel::fol {

struct Term {
  enum class Kind { Function, Variable };

  Kind kind = Kind::Function;
  std::string name;
  std::vector<Term> args;

  static Term variable(std::string name) { return {Kind::Variable, std::move(name), {}}; }
  static Term function(std::string symbol, std::vector<Term> args = {}) {
    return {Kind::Function, std::move(symbol), std::move(args)};
  }

  bool is_variable() const { return kind == Kind::Variable; }
  bool operator==(const Term&) const = default;
};

enum class Quantifier { Forall, Exists };
enum class Connective { And, Or, Implies, Iff };

const char* connective_text(Connective c);

/// FOF formula tree. Only the fields relevant to `kind` are populated:
///   Quantified  quantifier, vars, children[0]
///   Binary      connective, children[0..1]
///   Negation    children[0]
///   Atom        symbol, args
///   Equality    args[0..1]
struct Formula {
  enum class Kind { Quantified, Binary, Negation, Atom, Equality };

  Kind kind = Kind::Atom;
  Quantifier quantifier = Quantifier::Forall;
  Connective connective = Connective::And;
  std::vector<std::string> vars;
  std::vector<Formula> children;
  std::string symbol;
  std::vector<Term> args;

  static Formula quantified(Quantifier q, std::vector<std::string> vars, Formula body);
  static Formula binary(Connective c, Formula lhs, Formula rhs);
  static Formula negation(Formula body);
  static Formula atom(std::string predicate, std::vector<Term> args = {});
  static Formula equality(Term lhs, Term rhs);

  bool operator==(const Formula&) const = default;
};

/// Fully parenthesized rendering; parse(print(f)) == f.
std::string print_term(const Term& term);
std::string print_formula(const Formula& formula);

/// Variables occurring in `formula` that no enclosing quantifier binds.
std::vector<std::string> free_variables(const Formula& formula);

}  // namespace premsel::fol
