// solidbmc: bounded model checking toolchain for a Solidity subset
// Copyright 2026 The solidbmc Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "semantics/interpreter.hpp"

namespace solidbmc::explorer {

using sem::Address;
using sem::Choice;
using sem::Value;

struct HarnessConfig {
    enum class Kind { Contract, Function };
    Kind kind = Kind::Contract;
    std::string contract;
    std::string function; // Kind::Function only
    int txBound = 4;
    std::vector<U256> valueDomain = {U256(0), U256(1), U256(2), u256_max()};
    std::vector<U256> timeDomain; // empty: singleton {1}, or valueDomain when time is read
    int addressCount = 4;         // universe 1..N; the contract deploys at 1
    int stepBudget = 10000;
    int callDepth = 2; // re-entry sequence length and nesting cap
};

struct TraceEntry {
    sem::Transaction tx;
    std::vector<Choice> choices; // every decision of this call, in order
    std::vector<std::pair<std::string, Value>> cexprints;
};

struct Trace {
    enum class Verdict { ErrorFound, NoViolationWithinBound, BudgetExhausted };
    Verdict verdict = Verdict::NoViolationWithinBound;
    std::string errorSite;
    std::vector<TraceEntry> entries; // ErrorFound only: deploy + calls
    struct Stats {
        uint64_t statesExplored = 0; // completed interpreter runs
        uint64_t pruned = 0;         // dedup hits + invalid branches
        int64_t elapsedMs = 0;
    } stats;
};

// Bounded exploration under the configured harness; depth-first and fully
// deterministic, stopping at the first assertion violation. Every
// ErrorFound trace is replayed before being reported.
Trace run_harness(const ast::Program& solidProgram, const HarnessConfig& cfg);

// Deterministically re-executes a trace; returns true when it reproduces the
// recorded verdict at the recorded site. Throws sem::ReplayDivergence when a
// pinned choice cannot be taken.
bool replay(const ast::Program& solidProgram, const HarnessConfig& cfg, const Trace& trace);

nlohmann::json trace_to_json(const Trace& t);
std::string trace_to_text(const Trace& t);
int verdict_exit_code(Trace::Verdict v);

} // namespace solidbmc::explorer
