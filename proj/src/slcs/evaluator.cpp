#include "sbench/slcs/evaluator.hpp"

#include <cmath>
#include <optional>
#include <variant>

#include "sbench/core/errors.hpp"
#include "sbench/slcs/sort_check.hpp"

namespace sbench::slcs {

namespace {

using Value = std::variant<double, BitMask, ScalarField>;

double apply(ArithOp op, double a, double b) {
  switch (op) {
    case ArithOp::kAdd: return a + b;
    case ArithOp::kSub: return a - b;
    case ArithOp::kMul: return a * b;
  }
  return 0.0;
}

bool compare(CmpOp op, double a, double b) {
  switch (op) {
    case CmpOp::kLe: return a <= b;
    case CmpOp::kLt: return a < b;
    case CmpOp::kGe: return a >= b;
    case CmpOp::kGt: return a > b;
    case CmpOp::kEq: return a == b;
  }
  return false;
}

// Scalar view of a Number or ScalarField operand for pointwise operators.
struct Operand {
  const ScalarField* field = nullptr;
  double number = 0.0;
  double at(std::size_t i) const { return field ? field->at(i) : number; }
};

Operand operand(const Value& v) {
  if (const auto* f = std::get_if<ScalarField>(&v)) return {f, 0.0};
  return {nullptr, std::get<double>(v)};
}

class Evaluator {
 public:
  Evaluator(const SpecProgram& prog, const EvalContext& ctx, EvalOptions opts, EvalStats* stats)
      : prog_(prog), ctx_(ctx), opts_(opts), stats_(stats) {}

  BitMask eval_mask(const Expr& e) { return std::get<BitMask>(eval(e)); }

 private:
  int width() const { return ctx_.channels.front().width(); }
  int height() const { return ctx_.channels.front().height(); }

  Value eval(const Expr& e) {
    switch (e.kind) {
      case ExprKind::kNumber: return e.number;
      case ExprKind::kParam: {
        auto it = ctx_.params.find(e.name);
        if (it == ctx_.params.end()) throw EvalError(e.pos, "unbound parameter '" + e.name + "'");
        return it->second;
      }
      case ExprKind::kVar: return var(e);
      case ExprKind::kNot: return eval_mask(e.args[0]).complement();
      case ExprKind::kAnd: return eval_mask(e.args[0]) & eval_mask(e.args[1]);
      case ExprKind::kOr: return eval_mask(e.args[0]) | eval_mask(e.args[1]);
      case ExprKind::kArith: return arith(e);
      case ExprKind::kCmp: return cmp(e);
      case ExprKind::kCall: return call(e);
    }
    throw EvalError(e.pos, "unknown expression node");
  }

  Value var(const Expr& e) {
    const LetBinding* let = prog_.find_let(e.name);
    if (!let) throw EvalError(e.pos, "unbound name '" + e.name + "'");
    if (opts_.memoize) {
      if (auto it = cache_.find(e.name); it != cache_.end()) return it->second;
    }
    if (stats_) ++stats_->let_evaluations;
    Value v = eval(let->body);
    if (opts_.memoize) cache_.emplace(e.name, v);
    return v;
  }

  Value arith(const Expr& e) {
    const Value lv = eval(e.args[0]);
    const Value rv = eval(e.args[1]);
    if (std::holds_alternative<double>(lv) && std::holds_alternative<double>(rv)) {
      return apply(e.arith, std::get<double>(lv), std::get<double>(rv));
    }
    const Operand l = operand(lv);
    const Operand r = operand(rv);
    ScalarField out(width(), height());
    for (std::size_t i = 0; i < out.size(); ++i) out.set_at(i, apply(e.arith, l.at(i), r.at(i)));
    return out;
  }

  Value cmp(const Expr& e) {
    const Value lv = eval(e.args[0]);
    const Value rv = eval(e.args[1]);
    const Operand l = operand(lv);
    const Operand r = operand(rv);
    BitMask out(width(), height());
    for (std::size_t i = 0; i < out.size(); ++i) out.set_at(i, compare(e.cmp, l.at(i), r.at(i)));
    return out;
  }

  Value call(const Expr& e) {
    const Adjacency adj = ctx_.adjacency;
    switch (e.builtin) {
      case Builtin::kChannel: {
        const double idx = std::get<double>(eval(e.args[0]));
        if (!(idx >= 0.0) || idx != std::floor(idx) ||
            idx >= static_cast<double>(ctx_.channels.size())) {
          throw EvalError(e.pos, "channel index " + std::to_string(idx) + " out of range [0, " +
                                     std::to_string(ctx_.channels.size()) + ")");
        }
        return ctx_.channels[static_cast<std::size_t>(idx)];
      }
      case Builtin::kNear: return op_near(eval_mask(e.args[0]), adj);
      case Builtin::kInterior: return op_interior(eval_mask(e.args[0]), adj);
      case Builtin::kTouch: return op_touch(eval_mask(e.args[0]), eval_mask(e.args[1]), adj);
      case Builtin::kDt: return op_dt(eval_mask(e.args[0]));
      case Builtin::kGdt: return op_gdt(eval_mask(e.args[0]), eval_mask(e.args[1]), adj);
      case Builtin::kMinval: {
        const Value v = eval(e.args[0]);
        try {
          return op_minval(std::get<ScalarField>(v));
        } catch (const EvalError& err) {
          throw EvalError(e.pos, err.message());
        }
      }
    }
    throw EvalError(e.pos, "unknown builtin");
  }

  const SpecProgram& prog_;
  const EvalContext& ctx_;
  EvalOptions opts_;
  EvalStats* stats_;
  std::map<std::string, Value> cache_;
};

}  // namespace

void EvalContext::validate() const {
  if (channels.empty()) throw ValidationError("evaluation needs at least one channel");
  for (const auto& c : channels) {
    if (!c.same_shape(channels.front())) {
      throw ValidationError("all channels must share the same dimensions");
    }
  }
}

EvalOutputs evaluate(const SpecProgram& program, const EvalContext& ctx, EvalOptions options,
                     EvalStats* stats) {
  sort_check(program);
  ctx.validate();
  Evaluator ev(program, ctx, options, stats);
  EvalOutputs out;
  for (const auto& save : program.saves) out.emplace(save.output, ev.eval_mask(save.body));
  return out;
}

}  // namespace sbench::slcs
