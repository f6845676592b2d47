// solidbmc: bounded model checking toolchain for a Solidity subset
// Copyright 2026 The solidbmc Authors.
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "frontend/ast_json.hpp"
#include "support/generator.hpp"
#include "support/testutil.hpp"

using namespace solidbmc;
using namespace solidbmc::test;

TEST_CASE("wallet parses to the expected shape")
{
    ast::Program p = load_fixture("wallet.sol");
    REQUIRE(p.contracts.size() == 1);
    const ast::Contract& c = p.contracts[0];
    CHECK(c.name == "Wallet");
    REQUIRE(c.enums.size() == 1);
    CHECK(c.enums[0].values.size() == 3);
    REQUIRE(c.structs.size() == 1);
    CHECK(c.structs[0].members.size() == 3);
    REQUIRE(c.variables.size() == 1);
    CHECK(c.variables[0].type->kind == ast::TypeKind::Mapping);
    CHECK(c.functions.size() == 4);
}

TEST_CASE("empty contract parses")
{
    ast::Program p = load_source("contract C {}");
    REQUIRE(p.contracts.size() == 1);
    CHECK(p.contracts[0].enums.empty());
    CHECK(p.contracts[0].variables.empty());
    CHECK(p.contracts[0].functions.empty());
}

TEST_CASE("malformed assignment is a syntax error")
{
    CHECK_THROWS_WITH_AS(load_source("contract C { function f() public { x +=; } }"),
                         doctest::Contains("SyntaxError"), FrontendError);
}

TEST_CASE("unsupported constructs are rejected with UnsupportedFeature")
{
    auto kind = [](const std::string& src) {
        try {
            load_source(src);
        } catch (const FrontendError& e) {
            return e.kind();
        }
        return std::string("accepted");
    };
    CHECK(kind("contract C is B {}") == "UnsupportedFeature");
    CHECK(kind("contract C { function f() public { assembly {} } }") == "UnsupportedFeature");
    CHECK(kind("contract C { uint8 x; }") == "UnsupportedFeature");
    CHECK(kind("contract C { string s; }") == "UnsupportedFeature");
    CHECK(kind("contract C { event E(); }") == "UnsupportedFeature");
    CHECK(kind("contract C { modifier m() { _; } }") == "UnsupportedFeature");
    CHECK(kind("import \"SomethingElse.sol\"; contract C {}") == "UnsupportedFeature");
    CHECK(kind("import \"Verification.sol\"; contract C {}") == "accepted");
    CHECK(kind("pragma solidity ^0.5.0; contract C {}") == "accepted");
}

TEST_CASE("printing and re-parsing yields a structurally identical program")
{
    for (const char* fix : {"wallet.sol", "wallet_overflow.sol", "jar_reentrant.sol",
                            "jar_fixed.sol"}) {
        ast::Program p = load_fixture(fix);
        ast::Program p2 = load_source(frontend::print_program(p));
        CHECK_MESSAGE(ast::program_equal(p, p2), "round trip failed for " << fix);
    }
}

TEST_CASE("round trip holds for generated programs")
{
    for (uint64_t seed = 1; seed <= 30; ++seed) {
        std::string src = generate_contract(seed);
        CAPTURE(src);
        ast::Program p = load_source(src);
        ast::Program p2 = load_source(frontend::print_program(p));
        CHECK(ast::program_equal(p, p2));
    }
}

TEST_CASE("types and locations are annotated")
{
    ast::Program p = load_fixture("wallet.sol");
    // accounts[msg.sender].status in open()
    const ast::FunctionDeclaration& open = p.contracts[0].functions[0];
    const ast::StmtPtr& requireStmt = open.body[0];
    const ast::ExprPtr& cmp = requireStmt->condition;
    REQUIRE(cmp->kind == ast::Expr::Kind::Binary);
    const ast::ExprPtr& access = cmp->lhs; // accounts[msg.sender].status
    CHECK(access->type->kind == ast::TypeKind::Enum);
    CHECK(access->type->name == "Status");
    CHECK_FALSE(access->location.has_value()); // value type: no location
    // its base accounts[msg.sender] is a storage reference
    CHECK(access->base->type->kind == ast::TypeKind::Struct);
    CHECK(access->base->location == ast::LocationKind::StorageReference);
    // literal 0 adopts uint from context
    const ast::StmtPtr& balReq = p.contracts[0].functions[1].body[1];
    CHECK(balReq->condition->rhs->type->kind == ast::TypeKind::UInt);
}

TEST_CASE("location kinds for locals")
{
    ast::Program p = load_source(R"(
contract C {
    struct S { uint a; }
    S s0;
    uint[] xs;
    function f() public {
        S storage p = s0;
        uint[] memory mz = new uint[](0);
        p.a = 1;
        mz = xs;
    }
})");
    const auto& f = p.contracts[0].functions[0];
    // p is a storage pointer, mz a memory pointer
    const ast::StmtPtr& assignP = f.body[1]; // p = s0
    CHECK(assignP->lhs->location == ast::LocationKind::StoragePointer);
    CHECK(assignP->rhs->location == ast::LocationKind::StorageReference);
    // element access through the storage pointer is a storage reference
    const ast::StmtPtr& writePA = f.body[4]; // p.a = 1 (after decl+alloc of mz)
    REQUIRE(writePA->kind == ast::Stmt::Kind::Assignment);
    CHECK(writePA->lhs->base->location == ast::LocationKind::StoragePointer);
    const ast::StmtPtr& copy = f.body[5]; // mz = xs
    CHECK(copy->lhs->location == ast::LocationKind::MemoryPointer);
    CHECK(copy->rhs->location == ast::LocationKind::StorageReference);
}

TEST_CASE("type errors")
{
    auto kind = [](const std::string& src) {
        try {
            load_source(src);
        } catch (const FrontendError& e) {
            return e.kind();
        }
        return std::string("accepted");
    };
    // struct assigned to array
    CHECK(kind("contract C { struct S { uint a; } mapping(address => S) m;"
               " function f() public { uint[] memory a; a = m[msg.sender]; } }")
          == "TypeError");
    CHECK(kind("contract C { function f() public { x = 1; } }") == "UnknownIdentifier");
    CHECK(kind("contract C { function f() private {} function g() public {} }"
               " contract D { function h(C c) public { c.f(); } }")
          == "VisibilityError");
    CHECK(kind("contract C { function f() public {} function f(uint x) public {} }")
          == "TypeError"); // duplicate name
    CHECK(kind("contract C { mapping(uint[] => uint) m; }") == "TypeError"); // bad domain
    CHECK(kind("contract C { function f() public { uint x; bool x; } }") == "TypeError");
}

TEST_CASE("classify_copy reproduces the assignment-semantics matrix")
{
    using ast::CopyKind;
    using ast::LocationKind;
    struct Row {
        LocationKind lhs, rhs;
        CopyKind want;
    };
    // all seven rows; the storage-reference target covers any source
    const Row rows[] = {
        {LocationKind::StorageReference, LocationKind::StorageReference, CopyKind::DeepCopy},
        {LocationKind::StorageReference, LocationKind::StoragePointer, CopyKind::DeepCopy},
        {LocationKind::StorageReference, LocationKind::MemoryPointer, CopyKind::DeepCopy},
        {LocationKind::MemoryPointer, LocationKind::StorageReference, CopyKind::DeepCopy},
        {LocationKind::MemoryPointer, LocationKind::StoragePointer, CopyKind::DeepCopy},
        {LocationKind::MemoryPointer, LocationKind::MemoryPointer, CopyKind::Alias},
        {LocationKind::StoragePointer, LocationKind::StorageReference, CopyKind::Alias},
        {LocationKind::StoragePointer, LocationKind::StoragePointer, CopyKind::Alias},
        {LocationKind::StoragePointer, LocationKind::MemoryPointer, CopyKind::DeepCopy},
    };
    for (const Row& r : rows)
        CHECK(frontend::classify_copy(r.lhs, r.rhs) == r.want);
}

TEST_CASE("type recursion is rejected")
{
    CHECK_NOTHROW(load_fixture("wallet.sol"));
    auto kind = [](const std::string& src) {
        try {
            load_source(src);
        } catch (const FrontendError& e) {
            return e.kind();
        }
        return std::string("accepted");
    };
    CHECK(kind("contract C { struct A { A[] xs; } }") == "RecursiveType");
    // recursion through a mapping range is still recursion here
    CHECK(kind("contract C { struct A { mapping(uint => A) m; } }") == "RecursiveType");
    CHECK(kind("contract C { struct A { B b; } struct B { A a; } }") == "RecursiveType");
    CHECK(kind("contract C { struct A { B[] bs; } struct B { uint x; } }") == "accepted");
}

TEST_CASE("random struct graphs: acyclic accepted, cyclic rejected")
{
    // build random struct-membership graphs and check the verdict matches
    // a reachability-based cycle oracle
    for (uint64_t seed = 1; seed <= 60; ++seed) {
        Rng rng(seed);
        int n = 2 + (int)rng.below(5);
        std::vector<std::vector<int>> adj(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (rng.below(4) == 0)
                    adj[i].push_back(j);
        // independent cycle detection: DFS colouring
        std::vector<int> color(n, 0);
        bool cyclic = false;
        std::function<void(int)> dfs = [&](int u) {
            color[u] = 1;
            for (int v : adj[u]) {
                if (color[v] == 1)
                    cyclic = true;
                else if (color[v] == 0)
                    dfs(v);
            }
            color[u] = 2;
        };
        for (int i = 0; i < n; ++i)
            if (color[i] == 0)
                dfs(i);
        // render as struct declarations (members through arrays and mappings)
        std::string src = "contract G {\n";
        for (int i = 0; i < n; ++i) {
            src += "  struct T" + std::to_string(i) + " { uint z;";
            int k = 0;
            for (int j : adj[i]) {
                std::string member = " T" + std::to_string(j) + " m" + std::to_string(k) + ";";
                if (rng.flip())
                    member = " T" + std::to_string(j) + "[] m" + std::to_string(k) + ";";
                else if (rng.below(3) == 0)
                    member = " mapping(uint => T" + std::to_string(j) + ") m" + std::to_string(k)
                        + ";";
                src += member;
                ++k;
            }
            src += " }\n";
        }
        src += "}\n";
        CAPTURE(src);
        bool rejected = false;
        try {
            load_source(src);
        } catch (const FrontendError& e) {
            rejected = e.kind() == "RecursiveType";
            if (e.kind() != "RecursiveType")
                throw;
        }
        CHECK(rejected == cyclic);
    }
}

TEST_CASE("every reference expression has exactly one location kind")
{
    ast::Program p = load_fixture("wallet.sol");
    std::function<void(const ast::ExprPtr&)> walkExpr = [&](const ast::ExprPtr& e) {
        if (!e)
            return;
        if (e->type) {
            if (e->type->isReference())
                CHECK(e->location.has_value());
            else
                CHECK_FALSE(e->location.has_value());
        }
        walkExpr(e->base);
        walkExpr(e->index);
        walkExpr(e->lhs);
        walkExpr(e->rhs);
    };
    std::function<void(const ast::StmtList&)> walk = [&](const ast::StmtList& stmts) {
        for (const auto& s : stmts) {
            for (const auto& e : {s->condition, s->lhs, s->rhs, s->target, s->value, s->source,
                                  s->dest, s->address, s->arg, s->array})
                walkExpr(e);
            for (const auto& e : s->args)
                walkExpr(e);
            for (const auto& e : s->callLhs)
                walkExpr(e);
            walk(s->body);
            walk(s->elseBody);
        }
    };
    for (const auto& c : p.contracts)
        for (const auto& f : c.functions)
            walk(f.body);
}

TEST_CASE("AST JSON dump is well-formed")
{
    ast::Program p = load_fixture("wallet.sol");
    nlohmann::json j = frontend::ast_to_json(p);
    CHECK(j["kind"] == "Program");
    CHECK(j["contracts"].size() == 1);
    CHECK(j["contracts"][0]["functions"].size() == 4);
}
