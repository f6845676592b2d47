// solidbmc: bounded model checking toolchain for a Solidity subset
// Copyright 2026 The solidbmc Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "frontend/ast.hpp"

namespace solidbmc::explicator {

// Deterministic fresh-name source; generated names carry the reserved `$`
// prefix so they can never collide with user identifiers.
class NameGen {
public:
    std::string fresh(const std::string& hint) { return "$" + hint + std::to_string(counter_++); }

private:
    int counter_ = 0;
};

// Runs all desugaring passes to a fixed point over a type-checked program:
// precondition insertion, push explication, resize expansion, deep-copy
// expansion, argument temporaries, and default initializers. Missing
// constructors are synthesised. The result is fully re-type-checked.
ast::Program explicate(const ast::Program& p);

// Single-pass entry points over annotated statements (exposed for tests and
// golden files). Each returns the replacement statement sequence.
ast::StmtList explicate_resize(const ast::StmtPtr& lengthAssign, NameGen& names,
                               const ast::ProgramIndex& idx);
ast::StmtList explicate_deep_copy(const ast::StmtPtr& assign, NameGen& names,
                                  const ast::ProgramIndex& idx);
ast::StmtList explicate_push(const ast::StmtPtr& push);

// Structural scans backing the SolidProgram invariants.
bool has_unexplicated_deep_copy(const ast::Program& p);
bool all_index_accesses_guarded(const ast::Program& p);

} // namespace solidbmc::explicator
