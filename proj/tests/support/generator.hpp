// solidbmc: bounded model checking toolchain for a Solidity subset
// Copyright 2026 The solidbmc Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "support/testutil.hpp"

namespace solidbmc::test {

struct GenOptions {
    int maxFunctions = 3;
    int maxStmtsPerFunction = 4;
    bool withAsserts = true;     // sprinkle Verification.Assert sites
    bool withEnvReads = true;    // block.timestamp / tx.origin / balance reads
    bool withSendTransfer = true;
};

// Deterministic random contract over the supported subset (source text).
// The same seed always yields the same program.
std::string generate_contract(uint64_t seed, const GenOptions& opts = {});

// Random Table-2 transaction script against `program`, using addresses from
// `cfg`. Entries may be invalid on purpose.
std::vector<sem::Transaction> generate_script(uint64_t seed, const ast::Program& program,
                                              const sem::InterpreterConfig& cfg, int length);

} // namespace solidbmc::test
