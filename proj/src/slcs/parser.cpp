#include "sbench/slcs/parser.hpp"

#include <charconv>
#include <optional>
#include <utility>

namespace sbench::slcs {

namespace {

std::optional<CmpOp> cmp_op(const Token& t) {
  if (t.kind == TokenKind::kEquals) return CmpOp::kEq;
  if (t.kind != TokenKind::kOp) return std::nullopt;
  if (t.lexeme == "<=") return CmpOp::kLe;
  if (t.lexeme == "<") return CmpOp::kLt;
  if (t.lexeme == ">=") return CmpOp::kGe;
  if (t.lexeme == ">") return CmpOp::kGt;
  return std::nullopt;
}

std::string describe(const Token& t) {
  switch (t.kind) {
    case TokenKind::kIdent: return "identifier '" + t.lexeme + "'";
    case TokenKind::kNumber: return "number " + t.lexeme;
    case TokenKind::kString: return "string " + t.lexeme;
    default: return "'" + t.lexeme + "'";
  }
}

class Parser {
 public:
  explicit Parser(std::span<const Token> tokens) : toks_(tokens) {
    if (!toks_.empty()) {
      const Token& last = toks_.back();
      end_pos_ = {last.line, last.column + static_cast<int>(last.lexeme.size())};
    }
  }

  SpecProgram program() {
    while (peek_is(TokenKind::kLet)) let_decl();
    if (at_end()) fail("'save'");
    while (!at_end()) {
      if (!peek_is(TokenKind::kSave)) fail("'save'");
      save_decl();
    }
    return std::move(prog_);
  }

 private:
  bool at_end() const { return i_ >= toks_.size(); }
  const Token& peek() const { return toks_[i_]; }
  bool peek_is(TokenKind k) const { return !at_end() && peek().kind == k; }
  bool peek_op(std::string_view lexeme) const {
    return peek_is(TokenKind::kOp) && peek().lexeme == lexeme;
  }
  SourcePos here() const { return at_end() ? end_pos_ : peek().pos(); }

  [[noreturn]] void fail(const std::string& expected) const {
    throw ParseError(here(), expected, at_end() ? std::string("end of input") : describe(peek()));
  }

  const Token& expect(TokenKind k, const std::string& what) {
    if (!peek_is(k)) fail(what);
    return toks_[i_++];
  }

  void let_decl() {
    ++i_;  // let
    const Token& name = expect(TokenKind::kIdent, "identifier");
    if (builtin_from_name(name.lexeme)) {
      throw ParseError(name.pos(), "non-builtin name", describe(name));
    }
    if (prog_.find_let(name.lexeme) || prog_.params.count(name.lexeme)) {
      throw ParseError(name.pos(), "fresh name", "already used " + describe(name));
    }
    expect(TokenKind::kEquals, "'='");
    Expr body = expr();
    prog_.lets.push_back(LetBinding{name.lexeme, std::move(body), name.pos()});
  }

  void save_decl() {
    const SourcePos pos = here();
    ++i_;  // save
    const Token& out = expect(TokenKind::kString, "output name string");
    std::string name = string_value(out);
    if (name.empty()) throw ParseError(out.pos(), "non-empty output name", "\"\"");
    for (const auto& s : prog_.saves) {
      if (s.output == name) throw ParseError(out.pos(), "unique output name", describe(out));
    }
    Expr body = expr();
    prog_.saves.push_back(SaveDirective{std::move(name), std::move(body), pos});
  }

  Expr expr() { return or_expr(); }

  Expr or_expr() {
    Expr lhs = and_expr();
    while (peek_op("|")) {
      const SourcePos p = peek().pos();
      ++i_;
      lhs = Expr::make_or(std::move(lhs), and_expr(), p);
    }
    return lhs;
  }

  Expr and_expr() {
    Expr lhs = cmp_expr();
    while (peek_op("&")) {
      const SourcePos p = peek().pos();
      ++i_;
      lhs = Expr::make_and(std::move(lhs), cmp_expr(), p);
    }
    return lhs;
  }

  Expr cmp_expr() {
    Expr lhs = sum_expr();
    if (!at_end()) {
      if (auto op = cmp_op(peek())) {
        const SourcePos p = peek().pos();
        ++i_;
        lhs = Expr::make_cmp(*op, std::move(lhs), sum_expr(), p);
        if (!at_end() && cmp_op(peek())) fail("'&', '|' or end of comparison");
      }
    }
    return lhs;
  }

  Expr sum_expr() {
    Expr lhs = prod_expr();
    while (peek_op("+") || peek_op("-")) {
      const SourcePos p = peek().pos();
      const ArithOp op = peek().lexeme == "+" ? ArithOp::kAdd : ArithOp::kSub;
      ++i_;
      lhs = Expr::make_arith(op, std::move(lhs), prod_expr(), p);
    }
    return lhs;
  }

  Expr prod_expr() {
    Expr lhs = unary_expr();
    while (peek_op("*")) {
      const SourcePos p = peek().pos();
      ++i_;
      lhs = Expr::make_arith(ArithOp::kMul, std::move(lhs), unary_expr(), p);
    }
    return lhs;
  }

  Expr unary_expr() {
    if (peek_op("!")) {
      const SourcePos p = peek().pos();
      ++i_;
      return Expr::make_not(unary_expr(), p);
    }
    return atom();
  }

  Expr atom() {
    if (at_end()) fail("expression");
    const Token& t = peek();
    switch (t.kind) {
      case TokenKind::kNumber: {
        ++i_;
        double v = 0.0;
        const char* first = t.lexeme.data();
        const char* last = first + t.lexeme.size();
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc() || ptr != last) throw ParseError(t.pos(), "finite number", describe(t));
        return Expr::make_number(v, t.pos());
      }
      case TokenKind::kLParen: {
        ++i_;
        Expr inner = expr();
        expect(TokenKind::kRParen, "')'");
        return inner;
      }
      case TokenKind::kIdent: {
        ++i_;
        if (peek_is(TokenKind::kLParen)) return call(t);
        if (builtin_from_name(t.lexeme)) fail("'(' after builtin " + t.lexeme);
        if (prog_.find_let(t.lexeme)) return Expr::make_var(t.lexeme, t.pos());
        prog_.params.insert(t.lexeme);
        return Expr::make_param(t.lexeme, t.pos());
      }
      default:
        fail("expression");
    }
  }

  Expr call(const Token& name) {
    const auto builtin = builtin_from_name(name.lexeme);
    if (!builtin) throw ParseError(name.pos(), "builtin function", describe(name));
    ++i_;  // (
    std::vector<Expr> args;
    args.push_back(expr());
    while (peek_is(TokenKind::kComma)) {
      ++i_;
      args.push_back(expr());
    }
    expect(TokenKind::kRParen, "')'");
    return Expr::make_call(*builtin, std::move(args), name.pos());
  }

  std::span<const Token> toks_;
  std::size_t i_ = 0;
  SourcePos end_pos_{1, 1};
  SpecProgram prog_;
};

// Binding strength used by the printer; larger binds tighter.
int precedence(const Expr& e) {
  switch (e.kind) {
    case ExprKind::kOr: return 1;
    case ExprKind::kAnd: return 2;
    case ExprKind::kCmp: return 3;
    case ExprKind::kArith: return e.arith == ArithOp::kMul ? 5 : 4;
    case ExprKind::kNot: return 6;
    default: return 7;
  }
}

std::string format_number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed);
  return std::string(buf, ptr);
}

void print(const Expr& e, std::string& out);

void print_child(const Expr& child, int min_prec, std::string& out) {
  if (precedence(child) < min_prec) {
    out += '(';
    print(child, out);
    out += ')';
  } else {
    print(child, out);
  }
}

void print_binary(const Expr& e, std::string_view op, std::string& out) {
  const int p = precedence(e);
  // Left-associative (or non-associative for comparisons): a right child of
  // equal strength needs parentheses, as does a comparison on the left.
  print_child(e.args[0], e.kind == ExprKind::kCmp ? p + 1 : p, out);
  out += ' ';
  out += op;
  out += ' ';
  print_child(e.args[1], p + 1, out);
}

void print(const Expr& e, std::string& out) {
  switch (e.kind) {
    case ExprKind::kNumber: out += format_number(e.number); break;
    case ExprKind::kParam:
    case ExprKind::kVar: out += e.name; break;
    case ExprKind::kCall:
      out += to_string(e.builtin);
      out += '(';
      for (std::size_t i = 0; i < e.args.size(); ++i) {
        if (i) out += ", ";
        print(e.args[i], out);
      }
      out += ')';
      break;
    case ExprKind::kNot:
      out += '!';
      print_child(e.args[0], precedence(e), out);
      break;
    case ExprKind::kAnd: print_binary(e, "&", out); break;
    case ExprKind::kOr: print_binary(e, "|", out); break;
    case ExprKind::kArith: print_binary(e, to_string(e.arith), out); break;
    case ExprKind::kCmp: print_binary(e, to_string(e.cmp), out); break;
  }
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

SpecProgram parse(std::span<const Token> tokens) { return Parser(tokens).program(); }

SpecProgram parse_source(std::string_view source) {
  const auto tokens = tokenize(source);
  return parse(tokens);
}

std::string to_source(const Expr& expr) {
  std::string out;
  print(expr, out);
  return out;
}

std::string to_source(const SpecProgram& program) {
  std::string out;
  for (const auto& let : program.lets) {
    out += "let " + let.name + " = " + to_source(let.body) + "\n";
  }
  for (const auto& save : program.saves) {
    out += "save " + quote(save.output) + " " + to_source(save.body) + "\n";
  }
  return out;
}

}  // namespace sbench::slcs
