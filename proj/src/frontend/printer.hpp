// solidbmc: bounded model checking toolchain for a Solidity subset
// Copyright 2026 The solidbmc Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "frontend/ast.hpp"

#include <string>

namespace solidbmc::frontend {

// Pretty-prints a program in the shared concrete syntax. Tool-generated
// (`$`-named) artifacts print as-is, so output of the explicator must be
// re-parsed with ParseOptions::solidMode.
std::string print_program(const ast::Program& p);
std::string print_statements(const ast::StmtList& stmts, int indent = 0);
std::string print_expression(const ast::ExprPtr& e);

} // namespace solidbmc::frontend
