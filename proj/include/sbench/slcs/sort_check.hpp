#pragma once

#include <map>
#include <string>

#include "sbench/slcs/ast.hpp"

namespace sbench::slcs {

struct SortInfo {
  std::map<std::string, Sort> lets;
};

/// Infers the sort of every let and verifies that each save is a BoolField.
/// Throws SortError at the first ill-sorted node.
SortInfo sort_check(const SpecProgram& program);

/// Sort of a single expression given the sorts of the lets it may reference.
Sort infer_sort(const Expr& expr, const SortInfo& env);

}  // namespace sbench::slcs
