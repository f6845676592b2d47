// solidbmc: bounded model checking toolchain for a Solidity subset
// Copyright 2026 The solidbmc Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "frontend/ast.hpp"

#include <json.hpp>

namespace solidbmc::frontend {

// Structural JSON dump: node kind, children, source position, plus type and
// location annotations when present.
nlohmann::json ast_to_json(const ast::Program& p);

} // namespace solidbmc::frontend
