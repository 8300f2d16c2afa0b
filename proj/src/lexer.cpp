#include "rxo/token.hpp"

#include <array>
#include <cctype>

namespace rxo {

namespace {

const std::array<const char*, 39> kKeywords = {
    "CREATE", "CLASS",  "EXTEND", "ALTER",  "REALIZE", "AS",     "STORED",
    "SET",    "OF",     "TUPLE",  "KEY",    "SELECT",  "FROM",   "WHERE",
    "GROUP",  "BY",     "SUM",    "COUNT",  "MIN",     "MAX",    "AVG",
    "AND",    "OR",     "NOT",    "INTEGER", "FLOAT",  "STRING", "BOOL",
    "DATETIME", "BEGIN", "END",   "RETURN", "INSERT",  "INTO",   "VALUES",
    "OBJECT", "UPDATE", "CALL",   "DELETE",
};

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

// Strict ISO-8601 shape: YYYY-MM-DD with optional THH:MM:SS (or a space
// separator). Field ranges are validated when a value is built, not here.
bool datetime_shaped(const std::string& s) {
  auto all_digits = [&](size_t from, size_t n) {
    if (from + n > s.size()) return false;
    for (size_t i = from; i < from + n; ++i)
      if (!digit(s[i])) return false;
    return true;
  };
  if (s.size() != 10 && s.size() != 19) return false;
  if (!all_digits(0, 4) || s[4] != '-' || !all_digits(5, 2) || s[7] != '-' ||
      !all_digits(8, 2))
    return false;
  if (s.size() == 10) return true;
  if (s[10] != 'T' && s[10] != ' ') return false;
  return all_digits(11, 2) && s[13] == ':' && all_digits(14, 2) &&
         s[16] == ':' && all_digits(17, 2);
}

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_trivia();
      if (at_end()) break;
      out.push_back(next_token());
    }
    Token eof;
    eof.kind = TokenKind::EndOfInput;
    eof.lexeme = "<eof>";
    eof.span = pos();
    out.push_back(eof);
    return out;
  }

 private:
  bool at_end() const { return i_ >= src_.size(); }
  char peek(size_t ahead = 0) const {
    return i_ + ahead < src_.size() ? src_[i_ + ahead] : '\0';
  }
  SourcePos pos() const { return {line_, col_}; }

  char advance() {
    char c = src_[i_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_trivia() {
    for (;;) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '/' && peek(1) == '/') {
        while (!at_end() && peek() != '\n') advance();
      } else {
        break;
      }
    }
  }

  Token make(TokenKind kind, std::string lexeme, SourcePos at) {
    Token t;
    t.kind = kind;
    t.lexeme = std::move(lexeme);
    t.span = at;
    return t;
  }

  Token next_token() {
    SourcePos at = pos();
    char c = peek();
    if (ident_start(c)) return lex_word(at);
    if (digit(c)) return lex_number(at);
    if (c == '\'') return lex_string(at);
    return lex_symbol(at);
  }

  Token lex_word(SourcePos at) {
    std::string word = read_ident();
    // A '.' immediately followed by an identifier continues a dotted path.
    if (peek() == '.' && ident_start(peek(1))) {
      std::string path = word;
      while (peek() == '.' && ident_start(peek(1))) {
        advance();  // '.'
        path += '.';
        path += read_ident();
      }
      return make(TokenKind::DottedPath, std::move(path), at);
    }
    std::string upper = to_upper_ascii(word);
    if (upper == "TRUE" || upper == "FALSE")
      return make(TokenKind::BoolLiteral, std::move(word), at);
    if (is_reserved_word(word))
      return make(TokenKind::Keyword, std::move(word), at);
    return make(TokenKind::Identifier, std::move(word), at);
  }

  std::string read_ident() {
    std::string s;
    while (ident_char(peek())) s += advance();
    return s;
  }

  Token lex_number(SourcePos at) {
    std::string s;
    while (digit(peek())) s += advance();
    bool is_float = false;
    if (peek() == '.' && digit(peek(1))) {
      is_float = true;
      s += advance();
      while (digit(peek())) s += advance();
    }
    if (peek() == 'e' || peek() == 'E') {
      size_t k = 1;
      if (peek(1) == '+' || peek(1) == '-') k = 2;
      if (digit(peek(k))) {
        is_float = true;
        s += advance();
        if (peek() == '+' || peek() == '-') s += advance();
        while (digit(peek())) s += advance();
      }
    }
    return make(is_float ? TokenKind::FloatLiteral : TokenKind::IntegerLiteral,
                std::move(s), at);
  }

  Token lex_string(SourcePos at) {
    advance();  // opening quote
    std::string text;
    std::string raw = "'";
    for (;;) {
      if (at_end())
        fail(ErrorCode::LexError, "unterminated string literal", at);
      char c = advance();
      if (c == '\'') {
        if (peek() == '\'') {  // '' escape
          advance();
          text += '\'';
          raw += "''";
          continue;
        }
        raw += '\'';
        break;
      }
      text += c;
      raw += c;
    }
    Token t = make(datetime_shaped(text) ? TokenKind::DatetimeLiteral
                                         : TokenKind::StringLiteral,
                   std::move(text), at);
    t.raw = std::move(raw);
    return t;
  }

  Token lex_symbol(SourcePos at) {
    char c = advance();
    switch (c) {
      case '{': case '}': case '(': case ')': case ',': case ';':
      case '+': case '-': case '*': case '/': case '=': case '#':
        return make(TokenKind::Symbol, std::string(1, c), at);
      case '.':
        if (peek() == '.') {
          advance();
          return make(TokenKind::Symbol, "..", at);
        }
        return make(TokenKind::Symbol, ".", at);
      case ':':
        if (peek() == '=') {
          advance();
          return make(TokenKind::Symbol, ":=", at);
        }
        fail(ErrorCode::LexError, "illegal character ':'", at);
      case '<':
        if (peek() == '>') {
          advance();
          return make(TokenKind::Symbol, "<>", at);
        }
        if (peek() == '=') {
          advance();
          return make(TokenKind::Symbol, "<=", at);
        }
        return make(TokenKind::Symbol, "<", at);
      case '>':
        if (peek() == '=') {
          advance();
          return make(TokenKind::Symbol, ">=", at);
        }
        return make(TokenKind::Symbol, ">", at);
      default:
        fail(ErrorCode::LexError,
             std::string("illegal character '") + c + "'", at);
    }
  }

  const std::string& src_;
  size_t i_ = 0;
  uint32_t line_ = 1;
  uint32_t col_ = 1;
};

}  // namespace

std::string to_upper_ascii(const std::string& s) {
  std::string out = s;
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

bool is_reserved_word(const std::string& word) {
  std::string upper = to_upper_ascii(word);
  for (const char* kw : kKeywords)
    if (upper == kw) return true;
  return upper == "TRUE" || upper == "FALSE";
}

bool Token::is_keyword(const char* kw) const {
  return kind == TokenKind::Keyword && to_upper_ascii(lexeme) == kw;
}

const char* token_kind_name(TokenKind kind) {
  switch (kind) {
    case TokenKind::Keyword: return "keyword";
    case TokenKind::Identifier: return "identifier";
    case TokenKind::DottedPath: return "dotted-path";
    case TokenKind::IntegerLiteral: return "integer literal";
    case TokenKind::FloatLiteral: return "float literal";
    case TokenKind::StringLiteral: return "string literal";
    case TokenKind::DatetimeLiteral: return "datetime literal";
    case TokenKind::BoolLiteral: return "bool literal";
    case TokenKind::Symbol: return "symbol";
    case TokenKind::EndOfInput: return "end of input";
  }
  return "token";
}

std::vector<Token> tokenize(const std::string& source) {
  return Lexer(source).run();
}

}  // namespace rxo
