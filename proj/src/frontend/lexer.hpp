// solidbmc: bounded model checking toolchain for a Solidity subset
// Copyright 2026 The solidbmc Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "support/diagnostics.hpp"

#include <string>
#include <vector>

namespace solidbmc::frontend {

struct Token {
    enum class Kind { Identifier, Number, String, Punct, End };
    Kind kind;
    std::string text;
    SourceLoc loc;

    bool is(Kind k, const std::string& t) const { return kind == k && text == t; }
    bool isIdent(const std::string& t) const { return is(Kind::Identifier, t); }
    bool isPunct(const std::string& t) const { return is(Kind::Punct, t); }
};

struct LexOptions {
    // Accept `$`-prefixed identifiers (reserved for tool-generated names).
    bool allowDollarNames = false;
};

std::vector<Token> lex(const std::string& source, const LexOptions& opts = {});

} // namespace solidbmc::frontend
