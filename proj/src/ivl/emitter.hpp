// solidbmc: bounded model checking toolchain for a Solidity subset
// Copyright 2026 The solidbmc Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "explorer/explorer.hpp"
#include "frontend/ast.hpp"

#include <string>

namespace solidbmc::ivl {

struct EmitOptions {
    // Paper notation keeps enum/record declarations and abstract scalar
    // types; the desugared form lowers them to plain Boogie (ints, unique
    // consts, and one parallel map per record field).
    bool desugar = false;
};

// Emits the intermediate-verification-language encoding of an explicated
// program plus the configured harness (main and callP procedures).
// Byte-stable for fixed inputs.
std::string emit_program(const ast::Program& solidProgram, const explorer::HarnessConfig& harness,
                         const EmitOptions& opts = {});

// Individual templates, exposed for golden tests (paper notation only).
std::string emit_allocation(const std::string& refMapExpr, const std::string& refExpr,
                            const ast::TypePtr& type, const ast::ProgramIndex& idx);
std::string emit_initialisation(const std::string& refMapExpr, const std::string& refExpr,
                                const ast::TypePtr& type, const ast::ProgramIndex& idx);
std::string emit_lazy_deployment(const std::string& contract, const ast::ProgramIndex& idx);
std::string emit_deploy_contract(const std::string& contract, const ast::ProgramIndex& idx);

// Stable tag naming for storable types (also used by the grammar checker).
std::string type_tag(const ast::TypePtr& t);

} // namespace solidbmc::ivl
