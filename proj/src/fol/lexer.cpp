#include "premsel/fol/lexer.hpp"

#include "premsel/error.hpp"

namespace premsel::fol {

const char* token_kind_name(TokenKind kind) {
  switch (kind) {
    case TokenKind::Identifier: return "identifier";
    case TokenKind::Variable: return "variable";
    case TokenKind::LParen: return "'('";
    case TokenKind::RParen: return "')'";
    case TokenKind::Comma: return "','";
    case TokenKind::Ampersand: return "'&'";
    case TokenKind::Pipe: return "'|'";
    case TokenKind::Implies: return "'=>'";
    case TokenKind::Iff: return "'<=>'";
    case TokenKind::Not: return "'~'";
    case TokenKind::Forall: return "'!'";
    case TokenKind::Exists: return "'?'";
    case TokenKind::Colon: return "':'";
    case TokenKind::LBracket: return "'['";
    case TokenKind::RBracket: return "']'";
    case TokenKind::Equals: return "'='";
    case TokenKind::NotEquals: return "'!='";
    case TokenKind::Dot: return "'.'";
  }
  return "?";
}

namespace {

bool is_word_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

}  // namespace

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  const std::size_t n = text.size();
  auto punct = [&](TokenKind kind, std::size_t len) {
    tokens.push_back({kind, std::string(text.substr(i, len))});
    i += len;
  };
  while (i < n) {
    const char c = text[i];
    if (is_space(c)) {
      ++i;
      continue;
    }
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9')) {
      std::size_t j = i + 1;
      while (j < n && is_word_char(text[j])) ++j;
      const TokenKind kind = (c >= 'A' && c <= 'Z') ? TokenKind::Variable : TokenKind::Identifier;
      punct(kind, j - i);
      continue;
    }
    switch (c) {
      case '(': punct(TokenKind::LParen, 1); break;
      case ')': punct(TokenKind::RParen, 1); break;
      case ',': punct(TokenKind::Comma, 1); break;
      case '&': punct(TokenKind::Ampersand, 1); break;
      case '|': punct(TokenKind::Pipe, 1); break;
      case '~': punct(TokenKind::Not, 1); break;
      case '?': punct(TokenKind::Exists, 1); break;
      case ':': punct(TokenKind::Colon, 1); break;
      case '[': punct(TokenKind::LBracket, 1); break;
      case ']': punct(TokenKind::RBracket, 1); break;
      case '.': punct(TokenKind::Dot, 1); break;
      case '!':
        if (i + 1 < n && text[i + 1] == '=') punct(TokenKind::NotEquals, 2);
        else punct(TokenKind::Forall, 1);
        break;
      case '=':
        if (i + 1 < n && text[i + 1] == '>') punct(TokenKind::Implies, 2);
        else punct(TokenKind::Equals, 1);
        break;
      case '<':
        if (text.substr(i, 3) == "<=>") {
          punct(TokenKind::Iff, 3);
        } else {
          throw LexError(i, static_cast<unsigned char>(c));
        }
        break;
      default:
        throw LexError(i, static_cast<unsigned char>(c));
    }
  }
  if (tokens.empty()) throw LexError(n, 0);
  return tokens;
}

std::string join_tokens(const std::vector<Token>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ' ';
    out += tokens[i].text;
  }
  return out;
}

}  // namespace premsel::fol
