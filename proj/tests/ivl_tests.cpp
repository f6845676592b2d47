// solidbmc: bounded model checking toolchain for a Solidity subset
// Copyright 2026 The solidbmc Authors.
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ivl/checker.hpp"
#include "ivl/emitter.hpp"
#include "support/testutil.hpp"

using namespace solidbmc;
using namespace solidbmc::test;

namespace {

const char* kStructSource =
    "contract C { struct S { uint a; uint[] b; uint[][] c; } S s0; function f() public {} }";

explorer::HarnessConfig harness_for(const ast::Program& p)
{
    explorer::HarnessConfig cfg;
    cfg.contract = p.contracts.front().name;
    return cfg;
}

} // namespace

TEST_CASE("allocation block for the three-member struct")
{
    ast::Program p = load_source(kStructSource);
    ast::ProgramIndex idx(p);
    std::string got = ivl::emit_allocation("m", "refExp", ast::type_struct("S"), idx);
    // the template from the formal definition: member cells allocated first,
    // then the quantified form for the array-of-array data with the
    // disequality over primed twins, the snapshot/havoc/frame trio, and the
    // final typing assume
    const char* want = R"(
assume m[refExp].type == None;
m[refExp].type := S;
assume m[m[refExp].value.b].type == None;
m[m[refExp].value.b].type := uint[];
assume m[m[refExp].value.c].type == None;
m[m[refExp].value.c].type := uint[][];
assume (forall v : int :: m[m[m[refExp].value.c].value.data[v]].type == None);
assume (forall v : int, v' : int :: (v != v') ==> m[m[refExp].value.c].value.data[v] != m[m[refExp].value.c].value.data[v']);
preM := m;
havoc m;
assume (forall r : Ref :: preM[r].type != None ==> preM[r] == m[r]);
assume (forall v : int :: m[m[m[refExp].value.c].value.data[v]].type == uint[]);
)";
    CHECK(tokens_of(got) == tokens_of(want));
}

TEST_CASE("allocation of a value type is the two-line form")
{
    ast::Program p = load_source(kStructSource);
    ast::ProgramIndex idx(p);
    std::string got = ivl::emit_allocation("m", "r0", ast::type_uint(), idx);
    const char* want = R"(
assume m[r0].type == None;
m[r0].type := uint;
)";
    CHECK(tokens_of(got) == tokens_of(want));
}

TEST_CASE("allocation of a reference-range mapping quantifies over the domain")
{
    ast::Program p = load_source(
        "contract C { mapping(uint => uint[]) m0; function f() public {} }");
    ast::ProgramIndex idx(p);
    std::string got = ivl::emit_allocation(
        "m", "r0", ast::type_mapping(ast::type_uint(), ast::type_array(ast::type_uint())), idx);
    CHECK(got.find("assume (forall v : int :: m[m[r0].value[v]].type == None);")
          != std::string::npos);
    CHECK(got.find("v' : int") != std::string::npos);
    CHECK(got.find("havoc m;") != std::string::npos);
    CHECK(got.find("== uint[]);") != std::string::npos);
}

TEST_CASE("initialisation pins defaults")
{
    ast::Program p = load_source("contract C { enum Status { None, Open } Status st;"
                                 " uint[] xs; function f() public {} }");
    ast::ProgramIndex idx(p);
    CHECK(tokens_of(ivl::emit_initialisation("m", "r0", ast::type_uint(), idx))
          == tokens_of("assume m[r0].value == 0;"));
    std::string arr = ivl::emit_initialisation("m", "r0", ast::type_array(ast::type_uint()), idx);
    CHECK(tokens_of(arr) == tokens_of(R"(
assume m[r0].value.length == 0;
assume (forall v : int :: m[r0].value.data[v] == 0);
)"));
    CHECK(tokens_of(ivl::emit_initialisation("m", "r0", ast::type_enum("Status"), idx))
          == tokens_of("assume m[r0].value == Status_None;"));
}

TEST_CASE("lazy deployment allocates each member inside the unused guard")
{
    ast::Program wallet = load_solid(read_fixture("wallet.sol"));
    ast::ProgramIndex idx(wallet);
    std::string lazy = ivl::emit_lazy_deployment("Wallet", idx);
    CHECK(lazy.find("if (s[this].type == Unused) {") == 0);
    CHECK(lazy.find("s[this].type := Wallet;") != std::string::npos);
    // exactly one member allocation: accounts
    CHECK(lazy.find("s[this].members[Wallet_accounts]") != std::string::npos);
    CHECK(lazy.rfind("assume s[this].type == Wallet;") != std::string::npos);
    // no Initialisation in the lazy form: values stay nondeterministic
    CHECK(lazy.find(".value ==") == std::string::npos);

    // the deploy form zeroes the balance and pins the defaults
    std::string deploy = ivl::emit_deploy_contract("Wallet", idx);
    CHECK(deploy.find("s[this].balance := 0;") != std::string::npos);
    // mapping entries are pinned per key: every account field defaults
    CHECK(deploy.find("assume (forall v : Address ::") != std::string::npos);
    CHECK(deploy.find(".value.balance == 0);") != std::string::npos);
    CHECK(deploy.find(".value.status == Status_None);") != std::string::npos);

    // memberless contract: just the guard and the trailing assume
    ast::Program mini = load_solid("contract M { function f() public {} }");
    ast::ProgramIndex midx(mini);
    std::string lazyM = ivl::emit_lazy_deployment("M", midx);
    CHECK(tokens_of(lazyM) == tokens_of(R"(
if (s[this].type == Unused) {
    s[this].type := M;
}
assume s[this].type == M;
)"));
}

TEST_CASE("statement mapping: failures assume, errors assert, sends fork")
{
    ast::Program p = load_solid(
        "import \"Verification.sol\";"
        "contract C { bool ok; function r() public { revert(); }"
        " function q(bool c) public { require(c); }"
        " function a(bool c) public { Verification.Assert(c); }"
        " function t() public payable { msg.sender.transfer(1); }"
        " function sd() public payable { ok = msg.sender.send(1); } }");
    std::string text = ivl::emit_program(p, harness_for(p));
    CHECK(text.find("assume false;") != std::string::npos);        // revert
    CHECK(text.find("assume c;") != std::string::npos);            // require
    CHECK(text.find("assert c;") != std::string::npos);            // vassert
    CHECK(text.find("if (*) {") != std::string::npos);             // nondet fork
    CHECK(text.find("== SimpleAddress) {") != std::string::npos);  // dest dispatch
    auto res = ivl::check_ivl(text);
    CHECK_MESSAGE(res.ok, (res.errors.empty() ? std::string() : res.errors[0]));
}

TEST_CASE("full wallet emission passes the structural check in both modes")
{
    ast::Program wallet = load_solid(read_fixture("wallet.sol"));
    for (bool desugar : {false, true}) {
        ivl::EmitOptions eo;
        eo.desugar = desugar;
        std::string text = ivl::emit_program(wallet, harness_for(wallet), eo);
        auto res = ivl::check_ivl(text);
        CHECK_MESSAGE(res.ok, (desugar ? "desugared: " : "plain: ")
                                  << (res.errors.empty() ? std::string() : res.errors[0]));
        // one procedure per function plus constructor, main, and callP
        CHECK(text.find("procedure Wallet_open(") != std::string::npos);
        CHECK(text.find("procedure Wallet_close(") != std::string::npos);
        CHECK(text.find("procedure Wallet_deposit(") != std::string::npos);
        CHECK(text.find("procedure Wallet_withdraw(") != std::string::npos);
        CHECK(text.find("procedure Wallet_constructor(") != std::string::npos);
        CHECK(text.find("procedure main()") != std::string::npos);
        CHECK(text.find("procedure callP(") != std::string::npos);
    }
}

TEST_CASE("function harness main calls only the chosen procedure")
{
    ast::Program wallet = load_solid(read_fixture("wallet.sol"));
    explorer::HarnessConfig cfg = harness_for(wallet);
    cfg.kind = explorer::HarnessConfig::Kind::Function;
    cfg.function = "withdraw";
    std::string text = ivl::emit_program(wallet, cfg);
    auto res = ivl::check_ivl(text);
    REQUIRE(res.ok);
    // main has exactly one call, to Wallet_withdraw
    size_t mainPos = text.find("procedure main()");
    size_t callPos = text.find("call Wallet_", mainPos);
    REQUIRE(callPos != std::string::npos);
    CHECK(text.compare(callPos, 20, "call Wallet_withdraw") == 0);
    CHECK(text.find("call Wallet_open", mainPos) == std::string::npos);
    // callP havocs the whole state rather than re-entering
    size_t callpPos = text.find("procedure callP(");
    CHECK(text.find("havoc s;", callpPos) != std::string::npos);
    CHECK(text.find("call Wallet_", callpPos) == std::string::npos);
}

TEST_CASE("emission is byte-stable")
{
    ast::Program wallet = load_solid(read_fixture("wallet.sol"));
    std::string a = ivl::emit_program(wallet, harness_for(wallet));
    std::string b = ivl::emit_program(wallet, harness_for(wallet));
    CHECK(a == b);
}

TEST_CASE("jar emission passes the structural check")
{
    for (const char* fix : {"jar_reentrant.sol", "jar_fixed.sol", "wallet_overflow.sol"}) {
        ast::Program p = load_solid(read_fixture(fix));
        for (bool desugar : {false, true}) {
            ivl::EmitOptions eo;
            eo.desugar = desugar;
            std::string text = ivl::emit_program(p, harness_for(p), eo);
            auto res = ivl::check_ivl(text);
            CHECK_MESSAGE(res.ok, fix << ": " << (res.errors.empty() ? std::string() : res.errors[0]));
        }
    }
}

TEST_CASE("the checker rejects malformed programs")
{
    // unbalanced block
    CHECK_FALSE(ivl::check_ivl("procedure p() { assume true; ").ok);
    // undeclared identifier
    CHECK_FALSE(ivl::check_ivl("procedure p() { x := 1; }").ok);
    // arity mismatch
    auto res = ivl::check_ivl(R"(
procedure q(a : int) { }
procedure p() { call q(1, 2); }
)");
    CHECK_FALSE(res.ok);
    // undeclared callee
    CHECK_FALSE(ivl::check_ivl("procedure p() { call nope(); }").ok);
    // well-formed text passes
    CHECK(ivl::check_ivl(R"(
var g : [int]int;
procedure q(a : int) returns (r : int) { r := a; }
procedure p() { var x : int; call x := q(1); g[x] := x; assume (forall v : int :: g[v] >= 0); }
)").ok);
}

TEST_CASE("wrap-around arithmetic appears in the encoding")
{
    ast::Program p = load_solid(
        "contract C { uint x; int y; function f() public { x = x + 1; y = y * y; } }");
    std::string text = ivl::emit_program(p, harness_for(p));
    CHECK(text.find("mod 1157920892373161954235709850086879078532699846656405640394575840079131"
                    "29639936")
          != std::string::npos);
    // signed wrap recentres around 2^255
    CHECK(text.find("57896044618658097711785492504343953926634992332820282019728792003956564819"
                    "968")
          != std::string::npos);
}
