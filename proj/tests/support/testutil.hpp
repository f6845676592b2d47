// solidbmc: bounded model checking toolchain for a Solidity subset
// Copyright 2026 The solidbmc Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "explicator/explicate.hpp"
#include "frontend/printer.hpp"
#include "frontend/typecheck.hpp"
#include "semantics/interpreter.hpp"

#include <string>
#include <vector>

namespace solidbmc::test {

std::string read_fixture(const std::string& name); // tests/data/<name>

ast::Program load_source(const std::string& source);
ast::Program load_fixture(const std::string& name);
ast::Program load_solid(const std::string& source); // load + explicate

// whitespace-normalized token sequence, for golden comparisons
std::vector<std::string> tokens_of(const std::string& text);

// deterministic 64-bit generator (splitmix), independent of libc
class Rng {
public:
    explicit Rng(uint64_t seed)
        : state_(seed)
    {
    }
    uint64_t next();
    // uniform in [0, n)
    uint64_t below(uint64_t n) { return n == 0 ? 0 : next() % n; }
    bool flip() { return next() & 1; }
    template <typename T>
    const T& pick(const std::vector<T>& v)
    {
        return v[below(v.size())];
    }

private:
    uint64_t state_;
};

// default interpreter config for tests: addresses 1..4
sem::InterpreterConfig test_config(int addresses = 4, int budget = 10000);

// scan of a chain state + memory for reference-sharing violations: returns
// true when every allocated cell has at most one composite parent
bool allocation_injective(const sem::ChainState& chain, const sem::RefMap* memory = nullptr);

} // namespace solidbmc::test
