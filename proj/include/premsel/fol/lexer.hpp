#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace premsel::fol {

enum class TokenKind {
  Identifier,
  Variable,
  LParen,
  RParen,
  Comma,
  Ampersand,
  Pipe,
  Implies,
  Iff,
  Not,
  Forall,
  Exists,
  Colon,
  LBracket,
  RBracket,
  Equals,
  NotEquals,
  Dot,
};

const char* token_kind_name(TokenKind kind);

struct Token {
  TokenKind kind;
  std::string text;

  bool operator==(const Token&) const = default;
};

/// Splits FOF text into tokens. Whitespace separates tokens and is dropped.
/// Numerals lex as identifiers (they are uninterpreted constants).
/// Throws LexError on bytes outside the FOF alphabet and on input with no
/// tokens at all.
std::vector<Token> lex(std::string_view text);

/// Token texts joined by single spaces.
std::string join_tokens(const std::vector<Token>& tokens);

}  // namespace premsel::fol
