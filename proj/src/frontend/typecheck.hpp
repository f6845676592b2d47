// solidbmc: bounded model checking toolchain for a Solidity subset
// Copyright 2026 The solidbmc Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "frontend/ast.hpp"
#include "frontend/parser.hpp"

namespace solidbmc::frontend {

// Resolves user-type names, annotates every expression with its type and
// (for reference types) its location kind, and validates all statements.
// Rebuilds statements in place where surface forms need resolution.
// Throws FrontendError with kinds TypeError, UnknownIdentifier,
// VisibilityError, UnsupportedFeature.
void type_check(ast::Program& p);

// Rejects recursive user types, including recursion through mapping ranges.
// Throws FrontendError kind RecursiveType with the cycle path.
void check_type_acyclicity(const ast::Program& p);

// The assignment-semantics matrix for reference types.
ast::CopyKind classify_copy(ast::LocationKind lhs, ast::LocationKind rhs);

// All locals declared in the body (excluding parameters and out-params).
std::vector<ast::LocalVariableDeclaration> collect_locals(const ast::FunctionDeclaration& f);

// parse + type_check + acyclicity
ast::Program load_program(const std::string& source, const ParseOptions& opts = {});

} // namespace solidbmc::frontend
