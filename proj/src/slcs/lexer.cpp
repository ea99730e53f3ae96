#include "sbench/slcs/lexer.hpp"

#include <cctype>

namespace sbench::slcs {

namespace {

bool is_ident_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

std::string describe_byte(char c) {
  const auto u = static_cast<unsigned char>(c);
  if (u >= 0x21 && u < 0x7F) return std::string("unexpected character '") + c + "'";
  static const char* hex = "0123456789ABCDEF";
  return std::string("unexpected byte 0x") + hex[u >> 4] + hex[u & 0xF];
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '\n') {
        advance();
        continue;
      }
      if (c == ' ' || c == '\t' || c == '\r') {
        advance();
        continue;
      }
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
        continue;
      }
      const int line = line_;
      const int col = col_;
      const std::size_t start = pos_;
      auto emit = [&](TokenKind kind) {
        out.push_back(Token{kind, std::string(src_.substr(start, pos_ - start)), line, col});
      };

      if (is_ident_start(c)) {
        while (pos_ < src_.size() && (is_ident_start(src_[pos_]) || is_digit(src_[pos_]))) {
          advance();
        }
        const auto word = src_.substr(start, pos_ - start);
        emit(word == "let" ? TokenKind::kLet : word == "save" ? TokenKind::kSave : TokenKind::kIdent);
      } else if (is_digit(c)) {
        while (pos_ < src_.size() && is_digit(src_[pos_])) advance();
        if (pos_ < src_.size() && src_[pos_] == '.') {
          advance();
          if (pos_ >= src_.size() || !is_digit(src_[pos_])) {
            throw LexError({line_, col_}, "expected digit after decimal point");
          }
          while (pos_ < src_.size() && is_digit(src_[pos_])) advance();
        }
        emit(TokenKind::kNumber);
      } else if (c == '"') {
        advance();
        for (;;) {
          if (pos_ >= src_.size() || src_[pos_] == '\n') {
            throw LexError({line, col}, "unterminated string literal");
          }
          if (src_[pos_] == '\\') {
            advance();
            if (pos_ >= src_.size() || (src_[pos_] != '"' && src_[pos_] != '\\')) {
              throw LexError({line_, col_}, "invalid escape sequence");
            }
            advance();
            continue;
          }
          if (src_[pos_] == '"') {
            advance();
            break;
          }
          advance();
        }
        emit(TokenKind::kString);
      } else {
        switch (c) {
          case '(': advance(); emit(TokenKind::kLParen); break;
          case ')': advance(); emit(TokenKind::kRParen); break;
          case ',': advance(); emit(TokenKind::kComma); break;
          case '=': advance(); emit(TokenKind::kEquals); break;
          case '!':
          case '&':
          case '|':
          case '+':
          case '-':
          case '*':
            advance();
            emit(TokenKind::kOp);
            break;
          case '<':
          case '>':
            advance();
            if (pos_ < src_.size() && src_[pos_] == '=') advance();
            emit(TokenKind::kOp);
            break;
          default:
            throw LexError({line, col}, describe_byte(c));
        }
      }
    }
    return out;
  }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace

std::string_view to_string(TokenKind kind) noexcept {
  switch (kind) {
    case TokenKind::kIdent: return "IDENT";
    case TokenKind::kNumber: return "NUMBER";
    case TokenKind::kString: return "STRING";
    case TokenKind::kLParen: return "LPAREN";
    case TokenKind::kRParen: return "RPAREN";
    case TokenKind::kComma: return "COMMA";
    case TokenKind::kOp: return "OP";
    case TokenKind::kLet: return "LET";
    case TokenKind::kSave: return "SAVE";
    case TokenKind::kEquals: return "EQUALS";
  }
  return "?";
}

std::string string_value(const Token& token) {
  std::string out;
  const std::string& raw = token.lexeme;
  for (std::size_t i = 1; i + 1 < raw.size(); ++i) {
    if (raw[i] == '\\' && i + 2 < raw.size()) ++i;
    out.push_back(raw[i]);
  }
  return out;
}

std::vector<Token> tokenize(std::string_view source) { return Lexer(source).run(); }

}  // namespace sbench::slcs
