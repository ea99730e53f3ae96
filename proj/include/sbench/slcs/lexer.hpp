#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "sbench/slcs/errors.hpp"

namespace sbench::slcs {

enum class TokenKind {
  kIdent,
  kNumber,
  kString,
  kLParen,
  kRParen,
  kComma,
  kOp,      // ! & | + - * <= < >= >
  kLet,
  kSave,
  kEquals,  // '=' (binding in let, equality inside expressions)
};

struct Token {
  TokenKind kind;
  std::string lexeme;  // raw source text; string tokens keep their quotes
  int line;
  int column;

  SourcePos pos() const noexcept { return {line, column}; }
  friend bool operator==(const Token&, const Token&) = default;
};

std::string_view to_string(TokenKind kind) noexcept;

/// Contents of a string token with quotes removed and escapes resolved.
std::string string_value(const Token& token);

/// Splits spec source into tokens. Whitespace and '#' comments are skipped.
/// Throws LexError on any byte outside the alphabet.
std::vector<Token> tokenize(std::string_view source);

}  // namespace sbench::slcs
