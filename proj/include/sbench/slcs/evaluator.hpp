#pragma once

#include <map>
#include <string>
#include <vector>

#include "sbench/core/bit_mask.hpp"
#include "sbench/slcs/ast.hpp"
#include "sbench/slcs/spatial_ops.hpp"

namespace sbench::slcs {

/// Read-only inputs of one evaluation. All channels share one size.
struct EvalContext {
  std::vector<BitMask> channels;
  std::map<std::string, double> params;
  Adjacency adjacency = Adjacency::kFour;

  /// Throws ValidationError if there are no channels or their sizes differ.
  void validate() const;
};

struct EvalOptions {
  bool memoize = true;
};

struct EvalStats {
  int let_evaluations = 0;
};

using EvalOutputs = std::map<std::string, BitMask>;

/// Sort-checks and evaluates `program`, returning one mask per save directive.
/// With memoization each let body runs at most once; without it every
/// reference re-evaluates the body. Throws EvalError on unbound parameters or
/// out-of-range channel indices.
EvalOutputs evaluate(const SpecProgram& program, const EvalContext& ctx, EvalOptions options = {},
                     EvalStats* stats = nullptr);

}  // namespace sbench::slcs
