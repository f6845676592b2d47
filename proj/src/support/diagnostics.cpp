// solidbmc: bounded model checking toolchain for a Solidity subset
// Copyright 2026 The solidbmc Authors.
// SPDX-License-Identifier: Apache-2.0
#include "support/diagnostics.hpp"

namespace solidbmc {

std::string SourceLoc::str() const
{
    if (!valid())
        return "<unknown>";
    return std::to_string(line) + ":" + std::to_string(column);
}

FrontendError::FrontendError(std::string kind, SourceLoc loc, const std::string& message)
    : std::runtime_error(kind + " at " + loc.str() + ": " + message)
    , kind_(std::move(kind))
    , loc_(loc)
{
}

void fail_syntax(SourceLoc loc, const std::string& message)
{
    throw FrontendError("SyntaxError", loc, message);
}

void fail_unsupported(SourceLoc loc, const std::string& construct)
{
    throw FrontendError("UnsupportedFeature", loc, construct);
}

void fail_type(SourceLoc loc, const std::string& message)
{
    throw FrontendError("TypeError", loc, message);
}

} // namespace solidbmc
