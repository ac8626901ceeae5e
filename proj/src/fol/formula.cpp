#include "premsel/fol/formula.hpp"

#include <algorithm>
#include <set>

namespace premsel::fol {

const char* connective_text(Connective c) {
  switch (c) {
    case Connective::And: return "&";
    case Connective::Or: return "|";
    case Connective::Implies: return "=>";
    case Connective::Iff: return "<=>";
  }
  return "?";
}

Formula Formula::quantified(Quantifier q, std::vector<std::string> vars, Formula body) {
  Formula f;
  f.kind = Kind::Quantified;
  f.quantifier = q;
  f.vars = std::move(vars);
  f.children.push_back(std::move(body));
  return f;
}

Formula Formula::binary(Connective c, Formula lhs, Formula rhs) {
  Formula f;
  f.kind = Kind::Binary;
  f.connective = c;
  f.children.push_back(std::move(lhs));
  f.children.push_back(std::move(rhs));
  return f;
}

Formula Formula::negation(Formula body) {
  Formula f;
  f.kind = Kind::Negation;
  f.children.push_back(std::move(body));
  return f;
}

Formula Formula::atom(std::string predicate, std::vector<Term> args) {
  Formula f;
  f.kind = Kind::Atom;
  f.symbol = std::move(predicate);
  f.args = std::move(args);
  return f;
}

Formula Formula::equality(Term lhs, Term rhs) {
  Formula f;
  f.kind = Kind::Equality;
  f.args.push_back(std::move(lhs));
  f.args.push_back(std::move(rhs));
  return f;
}

namespace {

void append_args(std::string& out, const std::vector<Term>& args) {
  if (args.empty()) return;
  out += '(';
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) out += ',';
    out += print_term(args[i]);
  }
  out += ')';
}

void print_into(std::string& out, const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::Quantified: {
      out += '(';
      out += f.quantifier == Quantifier::Forall ? "! [" : "? [";
      for (std::size_t i = 0; i < f.vars.size(); ++i) {
        if (i) out += ',';
        out += f.vars[i];
      }
      out += "] : ";
      print_into(out, f.children[0]);
      out += ')';
      break;
    }
    case Formula::Kind::Binary:
      out += '(';
      print_into(out, f.children[0]);
      out += ' ';
      out += connective_text(f.connective);
      out += ' ';
      print_into(out, f.children[1]);
      out += ')';
      break;
    case Formula::Kind::Negation:
      out += "~ ";
      print_into(out, f.children[0]);
      break;
    case Formula::Kind::Atom:
      out += f.symbol;
      append_args(out, f.args);
      break;
    case Formula::Kind::Equality:
      out += '(';
      out += print_term(f.args[0]);
      out += " = ";
      out += print_term(f.args[1]);
      out += ')';
      break;
  }
}

void collect_free(const Term& t, std::vector<std::string>& bound, std::set<std::string>& seen,
                  std::vector<std::string>& out) {
  if (t.is_variable()) {
    if (std::find(bound.begin(), bound.end(), t.name) == bound.end() && seen.insert(t.name).second) {
      out.push_back(t.name);
    }
    return;
  }
  for (const Term& a : t.args) collect_free(a, bound, seen, out);
}

void collect_free(const Formula& f, std::vector<std::string>& bound, std::set<std::string>& seen,
                  std::vector<std::string>& out) {
  switch (f.kind) {
    case Formula::Kind::Quantified: {
      const std::size_t mark = bound.size();
      bound.insert(bound.end(), f.vars.begin(), f.vars.end());
      collect_free(f.children[0], bound, seen, out);
      bound.resize(mark);
      break;
    }
    case Formula::Kind::Binary:
    case Formula::Kind::Negation:
      for (const Formula& c : f.children) collect_free(c, bound, seen, out);
      break;
    case Formula::Kind::Atom:
    case Formula::Kind::Equality:
      for (const Term& a : f.args) collect_free(a, bound, seen, out);
      break;
  }
}

}  // namespace

std::string print_term(const Term& term) {
  std::string out = term.name;
  append_args(out, term.args);
  return out;
}

std::string print_formula(const Formula& formula) {
  std::string out;
  print_into(out, formula);
  return out;
}

std::vector<std::string> free_variables(const Formula& formula) {
  std::vector<std::string> bound;
  std::set<std::string> seen;
  std::vector<std::string> out;
  collect_free(formula, bound, seen, out);
  return out;
}

}  // namespace premsel::fol
