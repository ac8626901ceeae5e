#include "premsel/corpus/synth.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "premsel/error.hpp"
#include "premsel/rng.hpp"

namespace premsel::corpus {

using fol::Connective;
using fol::Formula;
using fol::Term;

DepModel parse_dep_model(std::string_view text) {
  if (text == "shared-symbol") return DepModel::SharedSymbol;
  if (text == "random") return DepModel::Random;
  throw UsageError("unknown dependency model '" + std::string(text) + "'");
}

namespace {

struct Symbol {
  std::string name;
  std::size_t arity;
};

const Symbol kPredicates[] = {
    {"v1_ordinal1", 1}, {"r2_hidden", 2}, {"v3_struct_0", 1}, {"r1_tarski", 2}, {"v2_funct_1", 1},
};
const Symbol kFunctions[] = {
    {"u1_struct_0", 1}, {"k1_zfmisc_1", 1}, {"k2_xcmplx_0", 2}, {"np__1", 0},
};
const char* const kVars[] = {"A", "B", "C"};

class FormulaGen {
public:
  explicit FormulaGen(Rng& rng) : rng_(rng) {}

  void set_vars(std::size_t n) { n_vars_ = n; }

  Term variable() { return Term::variable(kVars[rng_.index(n_vars_)]); }

  Term generic_term(int depth) {
    if (depth <= 0 || rng_.bernoulli(0.55)) {
      if (rng_.bernoulli(0.1)) return Term::function("np__1");
      return variable();
    }
    const Symbol& f = kFunctions[rng_.index(3)];
    std::vector<Term> args;
    for (std::size_t i = 0; i < f.arity; ++i) args.push_back(generic_term(depth - 1));
    return Term::function(f.name, std::move(args));
  }

  Term headed(const Symbol& s) {
    std::vector<Term> args;
    for (std::size_t i = 0; i < s.arity; ++i) args.push_back(generic_term(1));
    return Term::function(s.name, std::move(args));
  }

  Formula generic_atom() {
    const Symbol& p = kPredicates[rng_.index(std::size(kPredicates))];
    std::vector<Term> args;
    for (std::size_t i = 0; i < p.arity; ++i) args.push_back(generic_term(1));
    return Formula::atom(p.name, std::move(args));
  }

  Formula topic_atom(const Symbol& s) {
    if (rng_.bernoulli(0.2)) return Formula::equality(headed(s), generic_term(2));
    const Symbol& p = kPredicates[rng_.index(std::size(kPredicates))];
    std::vector<Term> args;
    const std::size_t slot = rng_.index(p.arity);
    for (std::size_t i = 0; i < p.arity; ++i) args.push_back(i == slot ? headed(s) : generic_term(1));
    return Formula::atom(p.name, std::move(args));
  }

  Formula combine(std::vector<Formula> atoms) {
    if (atoms.size() == 1) atoms.push_back(generic_atom());
    rng_.shuffle(atoms);
    for (Formula& a : atoms) {
      if (rng_.bernoulli(0.15)) a = Formula::negation(std::move(a));
    }
    Formula rhs = std::move(atoms.back());
    atoms.pop_back();
    Formula lhs = std::move(atoms.front());
    for (std::size_t i = 1; i < atoms.size(); ++i) {
      lhs = Formula::binary(Connective::And, std::move(lhs), std::move(atoms[i]));
    }
    const double u = rng_.uniform();
    const Connective top = u < 0.7 ? Connective::Implies : (u < 0.85 ? Connective::Iff : Connective::Or);
    return Formula::binary(top, std::move(lhs), std::move(rhs));
  }

private:
  Rng& rng_;
  std::size_t n_vars_ = 1;
};

Formula close(Formula body) {
  auto free = fol::free_variables(body);
  if (free.empty()) return body;
  std::sort(free.begin(), free.end());
  return Formula::quantified(fol::Quantifier::Forall, std::move(free), std::move(body));
}

std::string random_stem(Rng& rng) {
  std::string s;
  const std::size_t len = 3 + rng.index(3);
  for (std::size_t i = 0; i < len; ++i) s += static_cast<char>('a' + rng.index(26));
  return s;
}

Statement make_statement(std::string name, fol::Role role, Formula formula) {
  Statement st;
  st.name = std::move(name);
  st.role = role;
  st.tokens = fol::lex(fol::print_formula(formula));
  st.source_text = fol::compact_text(st.tokens);
  st.formula = std::move(formula);
  return st;
}

}  // namespace

Corpus synth_corpus(const SynthParams& params) {
  const std::size_t n = params.n_statements;
  if (n < 10) {
    throw DataError("TooSmallCorpus", "synthetic corpus needs at least 10 statements, got " + std::to_string(n));
  }
  Rng rng(derive_seed(params.seed, "synth"));
  FormulaGen gen(rng);

  const std::size_t n_defs = std::clamp<std::size_t>(params.n_symbols, 1, n / 2);
  std::vector<Symbol> symbols;
  std::vector<std::string> stems;
  for (std::size_t j = 0; j < n_defs; ++j) {
    stems.push_back(random_stem(rng));
    symbols.push_back({"k" + std::to_string(j + 1) + "_" + stems.back(), 1 + rng.index(2)});
  }

  // Definitions occupy the first slots and a random subset of the first 60%.
  std::set<std::size_t> def_slots;
  const std::size_t head = std::min<std::size_t>(3, n_defs);
  for (std::size_t i = 0; i < head; ++i) def_slots.insert(i);
  const std::size_t window = std::max<std::size_t>(head + (n_defs - head), n * 6 / 10);
  for (const std::size_t i : rng.sample_indices(window - head, n_defs - head)) def_slots.insert(head + i);

  std::vector<Statement> statements;
  DepMap deps;
  DefMap defines;
  std::vector<std::size_t> def_of_symbol(n_defs);
  std::vector<std::vector<std::size_t>> users(n_defs);  // theorem ids using each symbol
  std::size_t next_symbol = 0;

  for (std::size_t i = 0; i < n; ++i) {
    if (def_slots.count(i)) {
      const std::size_t j = next_symbol++;
      const Symbol& s = symbols[j];
      gen.set_vars(s.arity);
      std::vector<Term> head_args;
      for (std::size_t a = 0; a < s.arity; ++a) head_args.push_back(Term::variable(kVars[a]));
      Term head_term = Term::function(s.name, std::move(head_args));
      Formula body = rng.bernoulli(0.5)
                         ? Formula::equality(std::move(head_term), gen.generic_term(2))
                         : Formula::binary(Connective::Iff,
                                           Formula::atom(kPredicates[0].name, {std::move(head_term)}),
                                           gen.generic_atom());
      std::string name = "d" + std::to_string(j + 1) + "_" + stems[j];
      defines[s.name] = name;
      def_of_symbol[j] = i;
      statements.push_back(make_statement(std::move(name), fol::Role::Definition, close(std::move(body))));
      continue;
    }

    const std::size_t n_topics = std::min<std::size_t>(next_symbol, 1 + rng.index(3));
    auto picked = rng.sample_indices(next_symbol, n_topics);
    std::sort(picked.begin(), picked.end());
    gen.set_vars(1 + rng.index(3));
    std::vector<Formula> atoms;
    for (const std::size_t j : picked) atoms.push_back(gen.topic_atom(symbols[j]));
    std::string name = "t" + std::to_string(i) + "_" + stems[picked.front()];
    statements.push_back(make_statement(name, fol::Role::Axiom, close(gen.combine(std::move(atoms)))));

    std::vector<std::string> premises;
    if (params.dep_model == DepModel::SharedSymbol) {
      // Earlier theorems sharing at least two topics are cited too, most
      // recent first, so every dependency is visible in the statement text.
      std::map<std::size_t, std::size_t> shared;
      for (const std::size_t j : picked) {
        premises.push_back(statements[def_of_symbol[j]].name);
        for (const std::size_t u : users[j]) ++shared[u];
      }
      std::size_t extra = 0;
      for (auto it = shared.rbegin(); it != shared.rend() && extra < 2; ++it) {
        if (it->second < 2) continue;
        premises.push_back(statements[it->first].name);
        ++extra;
      }
    } else {
      const std::size_t count = std::min<std::size_t>(i, 1 + rng.index(4));
      for (const std::size_t k : rng.sample_indices(i, count)) premises.push_back(statements[k].name);
    }
    deps[name] = std::move(premises);
    for (const std::size_t j : picked) users[j].push_back(i);
  }
  return Corpus::build(std::move(statements), deps, defines);
}

Corpus write_synth_corpus(const SynthParams& params, const std::filesystem::path& dir) {
  Corpus c = synth_corpus(params);
  write_corpus(c, CorpusPaths::in_directory(dir),
               "synthetic corpus n=" + std::to_string(params.n_statements) +
                   " symbols=" + std::to_string(params.n_symbols) + " seed=" + std::to_string(params.seed));
  return c;
}

}  // namespace premsel::corpus
