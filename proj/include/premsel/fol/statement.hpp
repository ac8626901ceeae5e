#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "premsel/fol/formula.hpp"
#include "premsel/fol/lexer.hpp"

namespace premsel::fol {

enum class Role { Axiom, Definition, Conjecture };

const char* role_name(Role role);

struct Statement {
  std::string name;
  Role role = Role::Axiom;
  /// Chronological position in the corpus (0-based).
  std::size_t index = 0;
  /// Formula body in compact token form (see compact_text).
  std::string source_text;
  Formula formula;
  /// Token view of source_text.
  std::vector<Token> tokens;
};

/// Parses one `fof(name, role, formula).` entry. The formula must be closed
/// and use every symbol with a single arity.
Statement parse(const std::vector<Token>& tokens);

/// Parses a bare formula body. Free variables are allowed here.
Formula parse_formula(const std::vector<Token>& tokens);

/// Splits a token stream holding consecutive fof entries into statements,
/// assigning indices in order.
std::vector<Statement> parse_entries(const std::vector<Token>& tokens);

/// Reads an FOF file body: `::` and `%` comment lines are skipped.
std::vector<Statement> parse_file_text(std::string_view text);

/// Renders `fof(name, role, body).` with the pretty-printed body.
std::string print_entry(const std::string& name, Role role, const Formula& formula);

/// Concatenates tokens, inserting a space only where two adjacent tokens
/// would otherwise re-lex differently. Independent of input formatting.
std::string compact_text(const std::vector<Token>& tokens);

}  // namespace premsel::fol
