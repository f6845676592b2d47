// solidbmc: bounded model checking toolchain for a Solidity subset
// Copyright 2026 The solidbmc Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace solidbmc {

struct SourceLoc {
    int line = 0; // 1-based; 0 means "no position"
    int column = 0;

    bool valid() const { return line > 0; }
    std::string str() const;
};

// Errors reported against user input. `kind` is a stable machine-readable
// tag (SyntaxError, UnsupportedFeature, TypeError, ...).
class FrontendError : public std::runtime_error {
public:
    FrontendError(std::string kind, SourceLoc loc, const std::string& message);

    const std::string& kind() const { return kind_; }
    SourceLoc loc() const { return loc_; }

private:
    std::string kind_;
    SourceLoc loc_;
};

// Internal invariant violations: a bug in the tool, never a user error.
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& message)
        : std::logic_error("internal error: " + message)
    {
    }
};

[[noreturn]] void fail_syntax(SourceLoc loc, const std::string& message);
[[noreturn]] void fail_unsupported(SourceLoc loc, const std::string& construct);
[[noreturn]] void fail_type(SourceLoc loc, const std::string& message);

} // namespace solidbmc
