#include "sbench/slcs/ast.hpp"

#include <array>
#include <utility>

namespace sbench::slcs {

namespace {

struct BuiltinInfo {
  Builtin id;
  std::string_view name;
  int arity;
};

constexpr std::array<BuiltinInfo, 7> kBuiltins{{
    {Builtin::kChannel, "channel", 1},
    {Builtin::kNear, "near", 1},
    {Builtin::kInterior, "interior", 1},
    {Builtin::kTouch, "touch", 2},
    {Builtin::kDt, "dt", 1},
    {Builtin::kGdt, "gdt", 2},
    {Builtin::kMinval, "minval", 1},
}};

}  // namespace

std::string_view to_string(Builtin b) noexcept {
  for (const auto& info : kBuiltins) {
    if (info.id == b) return info.name;
  }
  return "?";
}

int arity(Builtin b) noexcept {
  for (const auto& info : kBuiltins) {
    if (info.id == b) return info.arity;
  }
  return 0;
}

std::optional<Builtin> builtin_from_name(std::string_view name) noexcept {
  for (const auto& info : kBuiltins) {
    if (info.name == name) return info.id;
  }
  return std::nullopt;
}

std::string_view to_string(ArithOp op) noexcept {
  switch (op) {
    case ArithOp::kAdd: return "+";
    case ArithOp::kSub: return "-";
    case ArithOp::kMul: return "*";
  }
  return "?";
}

std::string_view to_string(CmpOp op) noexcept {
  switch (op) {
    case CmpOp::kLe: return "<=";
    case CmpOp::kLt: return "<";
    case CmpOp::kGe: return ">=";
    case CmpOp::kGt: return ">";
    case CmpOp::kEq: return "=";
  }
  return "?";
}

std::string_view to_string(Sort s) noexcept {
  switch (s) {
    case Sort::kNumber: return "Number";
    case Sort::kBoolField: return "BoolField";
    case Sort::kScalarField: return "ScalarField";
  }
  return "?";
}

Expr Expr::make_number(double v, SourcePos p) {
  Expr e;
  e.kind = ExprKind::kNumber;
  e.number = v;
  e.pos = p;
  return e;
}

Expr Expr::make_param(std::string n, SourcePos p) {
  Expr e;
  e.kind = ExprKind::kParam;
  e.name = std::move(n);
  e.pos = p;
  return e;
}

Expr Expr::make_var(std::string n, SourcePos p) {
  Expr e;
  e.kind = ExprKind::kVar;
  e.name = std::move(n);
  e.pos = p;
  return e;
}

Expr Expr::make_call(Builtin b, std::vector<Expr> a, SourcePos p) {
  Expr e;
  e.kind = ExprKind::kCall;
  e.builtin = b;
  e.args = std::move(a);
  e.pos = p;
  return e;
}

Expr Expr::make_not(Expr inner, SourcePos p) {
  Expr e;
  e.kind = ExprKind::kNot;
  e.args.push_back(std::move(inner));
  e.pos = p;
  return e;
}

Expr Expr::make_and(Expr l, Expr r, SourcePos p) {
  Expr e;
  e.kind = ExprKind::kAnd;
  e.args.push_back(std::move(l));
  e.args.push_back(std::move(r));
  e.pos = p;
  return e;
}

Expr Expr::make_or(Expr l, Expr r, SourcePos p) {
  Expr e;
  e.kind = ExprKind::kOr;
  e.args.push_back(std::move(l));
  e.args.push_back(std::move(r));
  e.pos = p;
  return e;
}

Expr Expr::make_arith(ArithOp op, Expr l, Expr r, SourcePos p) {
  Expr e;
  e.kind = ExprKind::kArith;
  e.arith = op;
  e.args.push_back(std::move(l));
  e.args.push_back(std::move(r));
  e.pos = p;
  return e;
}

Expr Expr::make_cmp(CmpOp op, Expr l, Expr r, SourcePos p) {
  Expr e;
  e.kind = ExprKind::kCmp;
  e.cmp = op;
  e.args.push_back(std::move(l));
  e.args.push_back(std::move(r));
  e.pos = p;
  return e;
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.args != b.args) return false;
  switch (a.kind) {
    case ExprKind::kNumber: return a.number == b.number;
    case ExprKind::kParam:
    case ExprKind::kVar: return a.name == b.name;
    case ExprKind::kCall: return a.builtin == b.builtin;
    case ExprKind::kArith: return a.arith == b.arith;
    case ExprKind::kCmp: return a.cmp == b.cmp;
    case ExprKind::kNot:
    case ExprKind::kAnd:
    case ExprKind::kOr: return true;
  }
  return false;
}

const LetBinding* SpecProgram::find_let(std::string_view name) const {
  for (const auto& let : lets) {
    if (let.name == name) return &let;
  }
  return nullptr;
}

}  // namespace sbench::slcs
