// solidbmc: bounded model checking toolchain for a Solidity subset
// Copyright 2026 The solidbmc Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "frontend/ast.hpp"

#include <string>

namespace solidbmc::frontend {

struct ParseOptions {
    // Solid mode reloads tool output: `$`-names are legal and `.length`
    // assignments are plain writes instead of resizing assignments.
    bool solidMode = false;
};

// Parses Solidity-subset source into the untyped AST. Throws FrontendError
// (SyntaxError/UnsupportedFeature) on rejection.
ast::Program parse_program(const std::string& source, const ParseOptions& opts = {});

} // namespace solidbmc::frontend
