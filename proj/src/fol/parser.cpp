#include <map>
#include <string>

#include "premsel/error.hpp"
#include "premsel/fol/statement.hpp"

namespace premsel::fol {

const char* role_name(Role role) {
  switch (role) {
    case Role::Axiom: return "axiom";
    case Role::Definition: return "definition";
    case Role::Conjecture: return "conjecture";
  }
  return "axiom";
}

namespace {

class Parser {
public:
  Parser(const std::vector<Token>& tokens, std::size_t start) : tokens_(tokens), pos_(start) {}

  std::size_t position() const { return pos_; }
  bool at_end() const { return pos_ >= tokens_.size(); }

  Statement entry() {
    arity_.clear();
    const Token& head = expect(TokenKind::Identifier, "'fof'");
    if (head.text != "fof") fail("'fof'");
    expect(TokenKind::LParen, "'('");
    Statement st;
    st.name = expect(TokenKind::Identifier, "statement name").text;
    expect(TokenKind::Comma, "','");
    st.role = role(expect(TokenKind::Identifier, "role").text);
    expect(TokenKind::Comma, "','");
    const std::size_t body_begin = pos_;
    st.formula = formula();
    const std::size_t body_end = pos_;
    expect(TokenKind::RParen, "')'");
    expect(TokenKind::Dot, "'.'");

    const auto free = free_variables(st.formula);
    if (!free.empty()) throw ParseError(body_begin, "closed formula", "free variable " + free.front());

    st.tokens.assign(tokens_.begin() + static_cast<std::ptrdiff_t>(body_begin),
                     tokens_.begin() + static_cast<std::ptrdiff_t>(body_end));
    st.source_text = compact_text(st.tokens);
    return st;
  }

  Formula formula() {
    Formula lhs = unitary();
    if (at_end()) return lhs;
    const TokenKind k = peek().kind;
    if (k == TokenKind::Ampersand || k == TokenKind::Pipe) {
      const Connective c = k == TokenKind::Ampersand ? Connective::And : Connective::Or;
      while (!at_end() && peek().kind == k) {
        ++pos_;
        lhs = Formula::binary(c, std::move(lhs), unitary());
      }
      if (!at_end() && is_binary(peek().kind)) fail("')' (mixed connectives need parentheses)");
      return lhs;
    }
    if (k == TokenKind::Implies || k == TokenKind::Iff) {
      ++pos_;
      const Connective c = k == TokenKind::Implies ? Connective::Implies : Connective::Iff;
      Formula rhs = unitary();
      if (!at_end() && is_binary(peek().kind)) fail("')' (non-associative connective)");
      return Formula::binary(c, std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

private:
  static bool is_binary(TokenKind k) {
    return k == TokenKind::Ampersand || k == TokenKind::Pipe || k == TokenKind::Implies ||
           k == TokenKind::Iff;
  }

  static Role role(const std::string& text) {
    if (text == "axiom" || text == "theorem" || text == "lemma") return Role::Axiom;
    if (text == "definition") return Role::Definition;
    if (text == "conjecture") return Role::Conjecture;
    throw DataError("ParseError", "unsupported role '" + text + "'");
  }

  const Token& peek() const {
    if (at_end()) throw ParseError(pos_, "more input", "end of input");
    return tokens_[pos_];
  }

  [[noreturn]] void fail(const std::string& expected) const {
    throw ParseError(pos_, expected, at_end() ? "end of input" : "'" + tokens_[pos_].text + "'");
  }

  const Token& expect(TokenKind kind, const char* what) {
    if (at_end() || tokens_[pos_].kind != kind) fail(what);
    return tokens_[pos_++];
  }

  bool accept(TokenKind kind) {
    if (!at_end() && tokens_[pos_].kind == kind) {
      ++pos_;
      return true;
    }
    return false;
  }

  void note_arity(const std::string& symbol, std::size_t n) {
    auto [it, inserted] = arity_.emplace(symbol, n);
    if (!inserted && it->second != n) throw ArityError(symbol, it->second, n);
  }

  Formula unitary() {
    const Token& t = peek();
    switch (t.kind) {
      case TokenKind::LParen: {
        ++pos_;
        Formula inner = formula();
        expect(TokenKind::RParen, "')'");
        return inner;
      }
      case TokenKind::Not:
        ++pos_;
        return Formula::negation(unitary());
      case TokenKind::Forall:
      case TokenKind::Exists: {
        const Quantifier q = t.kind == TokenKind::Forall ? Quantifier::Forall : Quantifier::Exists;
        ++pos_;
        expect(TokenKind::LBracket, "'['");
        std::vector<std::string> vars;
        vars.push_back(expect(TokenKind::Variable, "variable").text);
        while (accept(TokenKind::Comma)) vars.push_back(expect(TokenKind::Variable, "variable").text);
        expect(TokenKind::RBracket, "']'");
        expect(TokenKind::Colon, "':'");
        return Formula::quantified(q, std::move(vars), unitary());
      }
      case TokenKind::Identifier:
      case TokenKind::Variable:
        return atomic();
      default:
        fail("formula");
    }
  }

  Formula atomic() {
    Term lhs = term();
    if (!at_end() && (peek().kind == TokenKind::Equals || peek().kind == TokenKind::NotEquals)) {
      const bool negated = peek().kind == TokenKind::NotEquals;
      ++pos_;
      Formula eq = Formula::equality(std::move(lhs), term());
      return negated ? Formula::negation(std::move(eq)) : eq;
    }
    if (lhs.is_variable()) fail("'=' after variable");
    // The term parser recorded lhs as a function; predicates share the table.
    return Formula::atom(std::move(lhs.name), std::move(lhs.args));
  }

  Term term() {
    const Token& t = peek();
    if (t.kind == TokenKind::Variable) {
      ++pos_;
      return Term::variable(t.text);
    }
    if (t.kind != TokenKind::Identifier) fail("term");
    ++pos_;
    Term f = Term::function(t.text);
    if (accept(TokenKind::LParen)) {
      f.args.push_back(term());
      while (accept(TokenKind::Comma)) f.args.push_back(term());
      expect(TokenKind::RParen, "')'");
    }
    note_arity(f.name, f.args.size());
    return f;
  }

  const std::vector<Token>& tokens_;
  std::size_t pos_;
  std::map<std::string, std::size_t> arity_;
};

bool is_word(TokenKind k) { return k == TokenKind::Identifier || k == TokenKind::Variable; }

}  // namespace

Statement parse(const std::vector<Token>& tokens) {
  Parser p(tokens, 0);
  Statement st = p.entry();
  if (!p.at_end()) throw ParseError(p.position(), "end of entry", "'" + tokens[p.position()].text + "'");
  return st;
}

Formula parse_formula(const std::vector<Token>& tokens) {
  Parser p(tokens, 0);
  Formula f = p.formula();
  if (!p.at_end()) throw ParseError(p.position(), "end of formula", "'" + tokens[p.position()].text + "'");
  return f;
}

std::vector<Statement> parse_entries(const std::vector<Token>& tokens) {
  std::vector<Statement> out;
  Parser p(tokens, 0);
  while (!p.at_end()) {
    Statement st = p.entry();
    st.index = out.size();
    out.push_back(std::move(st));
  }
  return out;
}

std::vector<Statement> parse_file_text(std::string_view text) {
  std::string body;
  body.reserve(text.size());
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    std::size_t first = line.find_first_not_of(" \t\r");
    const bool comment = first != std::string_view::npos &&
                         (line.substr(first, 2) == "::" || line[first] == '%');
    if (comment) {
      body.append(line.size(), ' ');
    } else {
      body.append(line);
    }
    body.push_back('\n');
    start = end + 1;
  }
  if (body.find_first_not_of(" \t\r\n") == std::string::npos) return {};
  return parse_entries(lex(body));
}

std::string print_entry(const std::string& name, Role role, const Formula& formula) {
  return "fof(" + name + ", " + role_name(role) + ", " + print_formula(formula) + ").";
}

std::string compact_text(const std::vector<Token>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) {
      const Token& prev = tokens[i - 1];
      const Token& next = tokens[i];
      const bool glue_words = is_word(prev.kind) && is_word(next.kind);
      const bool glue_bang = prev.kind == TokenKind::Forall && next.text.front() == '=';
      if (glue_words || glue_bang) out += ' ';
    }
    out += tokens[i].text;
  }
  return out;
}

}  // namespace premsel::fol
