#ifndef RXO_TOKEN_HPP_
#define RXO_TOKEN_HPP_

#include <string>
#include <vector>

#include "rxo/error.hpp"

namespace rxo {

enum class TokenKind {
  Keyword,
  Identifier,
  DottedPath,
  IntegerLiteral,
  FloatLiteral,
  StringLiteral,
  DatetimeLiteral,
  BoolLiteral,
  Symbol,
  EndOfInput,
};

struct Token {
  TokenKind kind = TokenKind::EndOfInput;
  std::string lexeme;         // as written; for string literals, the decoded text
  std::string raw;            // for string literals, the quoted source form
  SourcePos span;

  bool is_symbol(const char* s) const {
    return kind == TokenKind::Symbol && lexeme == s;
  }
  // Case-insensitive keyword test.
  bool is_keyword(const char* kw) const;
};

const char* token_kind_name(TokenKind kind);

// Returns true if `word` is a reserved keyword (case-insensitive).
bool is_reserved_word(const std::string& word);

std::string to_upper_ascii(const std::string& s);

// Splits source text into tokens. The trailing EndOfInput token is included.
// Throws Error(LexError) on unterminated strings or illegal characters.
std::vector<Token> tokenize(const std::string& source);

}  // namespace rxo

#endif  // RXO_TOKEN_HPP_
