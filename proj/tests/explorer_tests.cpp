// solidbmc: bounded model checking toolchain for a Solidity subset
// Copyright 2026 The solidbmc Authors.
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support/generator.hpp"
#include "support/oracle.hpp"
#include "support/testutil.hpp"

using namespace solidbmc;
using namespace solidbmc::test;
using explorer::HarnessConfig;
using explorer::Trace;

namespace {

HarnessConfig contract_cfg(const ast::Program& p, int bound = 3,
                           std::vector<U256> domain = {U256(0), U256(1)}, int addresses = 3)
{
    HarnessConfig cfg;
    cfg.contract = p.contracts.front().name;
    cfg.txBound = bound;
    cfg.valueDomain = std::move(domain);
    cfg.timeDomain = {U256(1)};
    cfg.addressCount = addresses;
    return cfg;
}

} // namespace

TEST_CASE("an immediate violation is found in one call")
{
    ast::Program p = load_solid("import \"Verification.sol\";"
                                "contract C { function f() public { Verification.Assert(false); } }");
    HarnessConfig cfg = contract_cfg(p, 1);
    Trace t = explorer::run_harness(p, cfg);
    REQUIRE(t.verdict == Trace::Verdict::ErrorFound);
    REQUIRE(t.entries.size() == 2); // deploy + one call
    CHECK(t.entries[1].tx.func == "f");
    CHECK(explorer::replay(p, cfg, t));
}

TEST_CASE("no assertions means no violation")
{
    ast::Program p = load_solid("contract C { uint x; function f() public { x = x + 1; } }");
    Trace t = explorer::run_harness(p, contract_cfg(p, 2));
    CHECK(t.verdict == Trace::Verdict::NoViolationWithinBound);
    CHECK(t.entries.empty());
    CHECK(t.stats.statesExplored > 0);
}

TEST_CASE("wallet overflow needs three calls and replays")
{
    ast::Program p = load_solid(read_fixture("wallet_overflow.sol"));
    HarnessConfig cfg;
    cfg.contract = "Wallet";
    cfg.txBound = 3;
    cfg.valueDomain = {U256(0), U256(1), u256_max()};
    cfg.addressCount = 4;
    Trace t = explorer::run_harness(p, cfg);
    REQUIRE(t.verdict == Trace::Verdict::ErrorFound);
    CHECK(t.errorSite.find("deposit:") == 0);
    REQUIRE(t.entries.size() == 4); // deploy + 3 calls
    CHECK(t.entries[1].tx.func == "open");
    CHECK(t.entries[2].tx.func == "deposit");
    CHECK(t.entries[3].tx.func == "deposit");
    CHECK(explorer::replay(p, cfg, t));

    // bound monotonicity: still found at a larger bound
    cfg.txBound = 4;
    CHECK(explorer::run_harness(p, cfg).verdict == Trace::Verdict::ErrorFound);
    // but not reachable with two calls
    cfg.txBound = 2;
    CHECK(explorer::run_harness(p, cfg).verdict == Trace::Verdict::NoViolationWithinBound);
    // domain monotonicity: enlarging the domain keeps the verdict
    cfg.txBound = 3;
    cfg.valueDomain = {U256(0), U256(1), U256(2), u256_max()};
    CHECK(explorer::run_harness(p, cfg).verdict == Trace::Verdict::ErrorFound);
}

TEST_CASE("re-entrancy: vulnerable jar errs, fixed jar is clean")
{
    HarnessConfig cfg;
    cfg.contract = "Jar";
    cfg.txBound = 3;
    cfg.valueDomain = {U256(0), U256(1)};
    cfg.timeDomain = {U256(1)};
    cfg.addressCount = 3;
    cfg.callDepth = 2;

    ast::Program bad = load_solid(read_fixture("jar_reentrant.sol"));
    Trace t = explorer::run_harness(bad, cfg);
    REQUIRE(t.verdict == Trace::Verdict::ErrorFound);
    CHECK(t.errorSite.find("refund:") == 0);
    // the witness re-enters the contract through the unknown callee
    bool reentered = false;
    for (const auto& e : t.entries)
        for (const auto& c : e.choices)
            if (c.kind == sem::Choice::Kind::CallTarget && c.text == "refund")
                reentered = true;
    CHECK(reentered);
    CHECK(explorer::replay(bad, cfg, t));

    ast::Program good = load_solid(read_fixture("jar_fixed.sol"));
    CHECK(explorer::run_harness(good, cfg).verdict == Trace::Verdict::NoViolationWithinBound);
}

TEST_CASE("function harness reaches states the contract harness cannot")
{
    // x == 1 is unreachable through the interface, but the function harness
    // havocs the storage
    ast::Program p = load_solid("import \"Verification.sol\";"
                                "contract C { uint x;"
                                " function set0() public { x = 0; }"
                                " function t() public { Verification.Assert(x == 0); } }");
    HarnessConfig cfg = contract_cfg(p, 2);
    CHECK(explorer::run_harness(p, cfg).verdict == Trace::Verdict::NoViolationWithinBound);
    cfg.kind = HarnessConfig::Kind::Function;
    cfg.function = "t";
    Trace t = explorer::run_harness(p, cfg);
    REQUIRE(t.verdict == Trace::Verdict::ErrorFound);
    REQUIRE(t.entries.size() == 1);
    CHECK(explorer::replay(p, cfg, t));
}

TEST_CASE("function harness: a plain require failure is not an error")
{
    ast::Program p = load_solid("contract C { function f() public { require(false); } }");
    HarnessConfig cfg = contract_cfg(p, 1);
    cfg.kind = HarnessConfig::Kind::Function;
    cfg.function = "f";
    CHECK(explorer::run_harness(p, cfg).verdict == Trace::Verdict::NoViolationWithinBound);
}

TEST_CASE("function harness: withdraw keeps its balance in the domain")
{
    ast::Program p = load_solid(
        "import \"Verification.sol\";"
        "contract W { mapping(address => uint) balance;"
        " function withdraw(uint v) public {"
        "   require(balance[msg.sender] >= v);"
        "   balance[msg.sender] = balance[msg.sender] - v;"
        "   Verification.Assert(balance[msg.sender] <= 1); } }");
    HarnessConfig cfg = contract_cfg(p, 1);
    cfg.kind = HarnessConfig::Kind::Function;
    cfg.function = "withdraw";
    // havoc domain {0,1}: balances start at most 1, so the remainder obeys
    // the assertion
    CHECK(explorer::run_harness(p, cfg).verdict == Trace::Verdict::NoViolationWithinBound);
    // enlarging the domain exposes the failure
    cfg.valueDomain = {U256(0), U256(1), U256(2)};
    CHECK(explorer::run_harness(p, cfg).verdict == Trace::Verdict::ErrorFound);
}

TEST_CASE("budget exhaustion is reported distinctly")
{
    ast::Program p = load_solid(
        "contract C { uint x; function f() public { while (true) { x = x + 1; } } }");
    HarnessConfig cfg = contract_cfg(p, 1);
    cfg.stepBudget = 500;
    CHECK(explorer::run_harness(p, cfg).verdict == Trace::Verdict::BudgetExhausted);
}

TEST_CASE("a tampered trace diverges on replay")
{
    ast::Program p = load_solid(read_fixture("wallet_overflow.sol"));
    HarnessConfig cfg;
    cfg.contract = "Wallet";
    cfg.txBound = 3;
    cfg.valueDomain = {U256(0), U256(1), u256_max()};
    cfg.addressCount = 4;
    Trace t = explorer::run_harness(p, cfg);
    REQUIRE(t.verdict == Trace::Verdict::ErrorFound);

    // flip the final call's msg.value havoc: the replay must not reach the
    // same error site
    Trace mutated = t;
    for (auto& c : mutated.entries.back().choices)
        if (c.kind == sem::Choice::Kind::HavocValue && c.site == "msg.value")
            c.value = sem::Value::uintv(0);
    bool diverged = false;
    try {
        diverged = !explorer::replay(p, cfg, mutated);
    } catch (const sem::ReplayDivergence&) {
        diverged = true;
    }
    CHECK(diverged);
}

TEST_CASE("explorer verdicts match the brute-force enumerator")
{
    int checked = 0;
    int errorsSeen = 0;
    for (uint64_t seed = 1; checked < 60; ++seed) {
        GenOptions opts;
        opts.maxFunctions = 2;
        opts.maxStmtsPerFunction = 3;
        std::string src = generate_contract(seed, opts);
        ast::Program solid = load_solid(src);
        HarnessConfig cfg = contract_cfg(solid, checked % 3 == 0 ? 2 : 1);
        CAPTURE(src);
        bool oracleSays = oracle_has_error(solid, cfg);
        Trace t = explorer::run_harness(solid, cfg);
        REQUIRE(t.verdict != Trace::Verdict::BudgetExhausted);
        bool explorerSays = t.verdict == Trace::Verdict::ErrorFound;
        CHECK_MESSAGE(oracleSays == explorerSays, "divergence on seed " << seed);
        ++checked;
        if (oracleSays)
            ++errorsSeen;
    }
    // the corpus must exercise both outcomes to mean anything
    CHECK(errorsSeen > 5);
    CHECK(checked - errorsSeen > 5);
}

TEST_CASE("trace JSON carries the schema fields")
{
    ast::Program p = load_solid("import \"Verification.sol\";"
                                "contract C { function f() public { Verification.Assert(false); } }");
    Trace t = explorer::run_harness(p, contract_cfg(p, 1));
    nlohmann::json j = explorer::trace_to_json(t);
    CHECK(j["verdict"] == "error-found");
    CHECK(j["trace"].size() == 2);
    CHECK(j["stats"].contains("statesExplored"));
    CHECK(j["stats"].contains("pruned"));
    CHECK(explorer::verdict_exit_code(t.verdict) == 1);
}

TEST_CASE("cexprint values are logged along the counterexample")
{
    ast::Program p = load_solid(
        "import \"Verification.sol\";"
        "contract C { uint x; function f(uint v) public {"
        " x = v + 1; Verification.CexPrint_x(x); Verification.Assert(x == 1); } }");
    Trace t = explorer::run_harness(p, contract_cfg(p, 1));
    REQUIRE(t.verdict == Trace::Verdict::ErrorFound);
    REQUIRE_FALSE(t.entries.back().cexprints.empty());
    CHECK(t.entries.back().cexprints[0].first == "CexPrint_x");
    CHECK(t.entries.back().cexprints[0].second.bits == 2); // v = 1 havocked
}

TEST_CASE("origin- and time-dependent violations are still found")
{
    // the environment enumeration must cover tx.origin != msg.sender and
    // chosen block timestamps
    ast::Program p1 = load_solid(
        "import \"Verification.sol\";"
        "contract C { function f() public { Verification.Assert(tx.origin == msg.sender); } }");
    HarnessConfig cfg = contract_cfg(p1, 1);
    Trace t1 = explorer::run_harness(p1, cfg);
    REQUIRE(t1.verdict == Trace::Verdict::ErrorFound);
    CHECK(explorer::replay(p1, cfg, t1));

    ast::Program p2 = load_solid(
        "import \"Verification.sol\";"
        "contract C { function f() public { Verification.Assert(block.timestamp == 0); } }");
    HarnessConfig cfg2 = contract_cfg(p2, 1);
    cfg2.timeDomain = {U256(0), U256(9)};
    Trace t2 = explorer::run_harness(p2, cfg2);
    REQUIRE(t2.verdict == Trace::Verdict::ErrorFound);
    bool sawTime = false;
    for (const auto& c : t2.entries.back().choices)
        if (c.site == "b.time" && c.value.bits == 9)
            sawTime = true;
    CHECK(sawTime);
}

TEST_CASE("balance reads widen the environment havoc")
{
    // the violation needs a *non-sender* address to carry a balance, which
    // only the full balance havoc provides
    ast::Program p = load_solid(
        "import \"Verification.sol\";"
        "contract C { function f(address a) public {"
        " require(a != msg.sender); Verification.Assert(a.balance == 0); } }");
    HarnessConfig cfg = contract_cfg(p, 1);
    Trace t = explorer::run_harness(p, cfg);
    REQUIRE(t.verdict == Trace::Verdict::ErrorFound);
    CHECK(explorer::replay(p, cfg, t));
}
