#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "sbench/slcs/errors.hpp"

namespace sbench::slcs {

enum class ExprKind { kNumber, kParam, kVar, kCall, kNot, kAnd, kOr, kArith, kCmp };

enum class Builtin { kChannel, kNear, kInterior, kTouch, kDt, kGdt, kMinval };

enum class ArithOp { kAdd, kSub, kMul };

enum class CmpOp { kLe, kLt, kGe, kGt, kEq };

std::string_view to_string(Builtin b) noexcept;
std::string_view to_string(ArithOp op) noexcept;
std::string_view to_string(CmpOp op) noexcept;
std::optional<Builtin> builtin_from_name(std::string_view name) noexcept;
/// Number of arguments the builtin takes.
int arity(Builtin b) noexcept;

/// Expression tree node. Which payload fields are meaningful depends on `kind`:
/// kNumber uses `number`; kParam/kVar use `name`; kCall uses `builtin`;
/// kArith uses `arith`; kCmp uses `cmp`. Children live in `args`.
struct Expr {
  ExprKind kind = ExprKind::kNumber;
  double number = 0.0;
  std::string name;
  Builtin builtin = Builtin::kChannel;
  ArithOp arith = ArithOp::kAdd;
  CmpOp cmp = CmpOp::kLe;
  std::vector<Expr> args;
  SourcePos pos;

  static Expr make_number(double v, SourcePos p = {});
  static Expr make_param(std::string n, SourcePos p = {});
  static Expr make_var(std::string n, SourcePos p = {});
  static Expr make_call(Builtin b, std::vector<Expr> a, SourcePos p = {});
  static Expr make_not(Expr e, SourcePos p = {});
  static Expr make_and(Expr l, Expr r, SourcePos p = {});
  static Expr make_or(Expr l, Expr r, SourcePos p = {});
  static Expr make_arith(ArithOp op, Expr l, Expr r, SourcePos p = {});
  static Expr make_cmp(CmpOp op, Expr l, Expr r, SourcePos p = {});

  /// Structural equality; source positions are ignored.
  friend bool operator==(const Expr& a, const Expr& b);
};

struct LetBinding {
  std::string name;
  Expr body;
  SourcePos pos;
  friend bool operator==(const LetBinding& a, const LetBinding& b) {
    return a.name == b.name && a.body == b.body;
  }
};

struct SaveDirective {
  std::string output;
  Expr body;
  SourcePos pos;
  friend bool operator==(const SaveDirective& a, const SaveDirective& b) {
    return a.output == b.output && a.body == b.body;
  }
};

struct SpecProgram {
  std::vector<LetBinding> lets;
  std::vector<SaveDirective> saves;
  std::set<std::string> params;

  const LetBinding* find_let(std::string_view name) const;

  friend bool operator==(const SpecProgram&, const SpecProgram&) = default;
};

enum class Sort { kNumber, kBoolField, kScalarField };

std::string_view to_string(Sort s) noexcept;

}  // namespace sbench::slcs
