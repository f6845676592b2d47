// solidbmc: bounded model checking toolchain for a Solidity subset
// Copyright 2026 The solidbmc Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

namespace solidbmc::ivl {

struct CheckResult {
    bool ok = true;
    std::vector<std::string> errors;
};

// Structural well-formedness of emitted verification-language text: the
// declaration/statement grammar (both the record/enum notation and the
// desugared form), balanced blocks, declared-before-use identifiers, and
// arity-correct procedure calls. Record member accesses are checked against
// the set of declared member names. No type checking is attempted.
CheckResult check_ivl(const std::string& text);

} // namespace solidbmc::ivl
