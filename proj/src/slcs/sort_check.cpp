#include "sbench/slcs/sort_check.hpp"

#include <string>

namespace sbench::slcs {

namespace {

std::string name(Sort s) { return std::string(to_string(s)); }

void require(const Expr& e, Sort found, Sort expected, const std::string& context) {
  if (found != expected) throw SortError(e.pos, name(expected), name(found), context);
}

void require_numeric(const Expr& e, Sort found, const std::string& context) {
  if (found == Sort::kBoolField) throw SortError(e.pos, "Number or ScalarField", name(found), context);
}

std::string plural(int n) { return std::to_string(n) + (n == 1 ? " argument" : " arguments"); }

}  // namespace

Sort infer_sort(const Expr& e, const SortInfo& env) {
  switch (e.kind) {
    case ExprKind::kNumber:
    case ExprKind::kParam: return Sort::kNumber;
    case ExprKind::kVar: {
      auto it = env.lets.find(e.name);
      if (it == env.lets.end()) throw SortError(e.pos, "bound name", "unbound '" + e.name + "'", "variable");
      return it->second;
    }
    case ExprKind::kNot: {
      require(e.args[0], infer_sort(e.args[0], env), Sort::kBoolField, "operand of '!'");
      return Sort::kBoolField;
    }
    case ExprKind::kAnd:
    case ExprKind::kOr: {
      const std::string ctx = e.kind == ExprKind::kAnd ? "operand of '&'" : "operand of '|'";
      require(e.args[0], infer_sort(e.args[0], env), Sort::kBoolField, ctx);
      require(e.args[1], infer_sort(e.args[1], env), Sort::kBoolField, ctx);
      return Sort::kBoolField;
    }
    case ExprKind::kArith: {
      const std::string ctx = "operand of '" + std::string(to_string(e.arith)) + "'";
      const Sort l = infer_sort(e.args[0], env);
      const Sort r = infer_sort(e.args[1], env);
      require_numeric(e.args[0], l, ctx);
      require_numeric(e.args[1], r, ctx);
      return (l == Sort::kNumber && r == Sort::kNumber) ? Sort::kNumber : Sort::kScalarField;
    }
    case ExprKind::kCmp: {
      const std::string ctx = "operand of '" + std::string(to_string(e.cmp)) + "'";
      const Sort l = infer_sort(e.args[0], env);
      const Sort r = infer_sort(e.args[1], env);
      require_numeric(e.args[0], l, ctx);
      require_numeric(e.args[1], r, ctx);
      if (l == Sort::kNumber && r == Sort::kNumber) {
        throw SortError(e.pos, "at least one ScalarField", "Number vs Number",
                        "comparison (constant predicates are not allowed)");
      }
      return Sort::kBoolField;
    }
    case ExprKind::kCall: {
      const std::string fn = std::string(to_string(e.builtin));
      const int n = arity(e.builtin);
      if (static_cast<int>(e.args.size()) != n) {
        throw SortError(e.pos, plural(n), plural(static_cast<int>(e.args.size())), fn);
      }
      auto arg = [&](std::size_t i, Sort expected) {
        require(e.args[i], infer_sort(e.args[i], env), expected,
                "argument " + std::to_string(i + 1) + " of " + fn);
      };
      switch (e.builtin) {
        case Builtin::kChannel:
          arg(0, Sort::kNumber);
          return Sort::kBoolField;
        case Builtin::kNear:
        case Builtin::kInterior:
          arg(0, Sort::kBoolField);
          return Sort::kBoolField;
        case Builtin::kTouch:
          arg(0, Sort::kBoolField);
          arg(1, Sort::kBoolField);
          return Sort::kBoolField;
        case Builtin::kDt:
          arg(0, Sort::kBoolField);
          return Sort::kScalarField;
        case Builtin::kGdt:
          arg(0, Sort::kBoolField);
          arg(1, Sort::kBoolField);
          return Sort::kScalarField;
        case Builtin::kMinval:
          arg(0, Sort::kScalarField);
          return Sort::kNumber;
      }
    }
  }
  throw SortError(e.pos, "expression", "unknown node", "sort check");
}

SortInfo sort_check(const SpecProgram& program) {
  SortInfo info;
  for (const auto& let : program.lets) {
    info.lets[let.name] = infer_sort(let.body, info);
  }
  for (const auto& save : program.saves) {
    require(save.body, infer_sort(save.body, info), Sort::kBoolField,
            "save \"" + save.output + "\"");
  }
  return info;
}

}  // namespace sbench::slcs
