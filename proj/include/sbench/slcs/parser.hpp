#pragma once

#include <span>
#include <string>
#include <string_view>

#include "sbench/slcs/ast.hpp"
#include "sbench/slcs/lexer.hpp"

namespace sbench::slcs {

/// Builds a program from tokens. Precedence from loosest to tightest:
/// `|`, `&`, comparisons (non-associative), `+ -`, `*`, unary `!`, atoms.
/// Identifiers that are neither builtins nor earlier lets become parameters.
SpecProgram parse(std::span<const Token> tokens);

/// tokenize + parse.
SpecProgram parse_source(std::string_view source);

/// Canonical source text for a program. parse_source(to_source(p)) == p.
std::string to_source(const SpecProgram& program);
std::string to_source(const Expr& expr);

}  // namespace sbench::slcs
