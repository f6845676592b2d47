// solidbmc: bounded model checking toolchain for a Solidity subset
// Copyright 2026 The solidbmc Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "semantics/interpreter.hpp"

namespace solidbmc::sem {

// One scripted transaction: the record plus optional pinned choices for its
// nondeterministic points (matched by value, in execution order).
struct ScriptEntry {
    Transaction tx;
    std::vector<Choice> choices;
};

struct Script {
    std::vector<ScriptEntry> entries;
};

// Parses the run-command JSON schema. Argument values are coerced against
// the callee's parameter types. Throws FrontendError("ScriptError", ...)
// on schema violations.
Script parse_script(const nlohmann::json& j, const ast::ProgramIndex& idx);

struct ScriptRunResult {
    struct Step {
        TransactionResult::Kind kind;
        std::string detail; // invalid reason or error site
        std::vector<std::pair<std::string, Value>> cexLog;
        std::vector<Choice> choices; // decisions actually taken
    };
    std::vector<Step> steps;
    ChainState finalState;
    bool errored = false; // some step raised an assertion error
};

ScriptRunResult run_script(const ast::Program& solidProgram, const InterpreterConfig& cfg,
                           const Script& script);

nlohmann::json script_result_to_json(const ScriptRunResult& r, bool includeState);

} // namespace solidbmc::sem
