// solidbmc: bounded model checking toolchain for a Solidity subset
// Copyright 2026 The solidbmc Authors.
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support/generator.hpp"
#include "support/testutil.hpp"

using namespace solidbmc;
using namespace solidbmc::test;
using sem::ChainState;
using sem::ExecState;
using sem::Transaction;
using sem::TransactionResult;
using sem::Value;

namespace {

struct World {
    ast::Program solid;
    sem::DefaultChoiceProvider defaults;
    sem::Interpreter interp;

    World(const std::string& src, int addresses = 4)
        : solid(load_solid(src))
        , interp(solid, test_config(addresses), defaults)
    {
    }

    // chain with a deployed instance of the first contract at address 2,
    // funded simple address 1
    ChainState deployed(const U256& fund = 100)
    {
        ChainState chain;
        auto r1 = interp.apply_transaction(chain, Transaction::createAddress(fund));
        REQUIRE(r1.kind == TransactionResult::Kind::Committed);
        auto r2 = interp.apply_transaction(
            r1.chain, Transaction::createContract(1, solid.contracts[0].name, 0, {}));
        REQUIRE(r2.kind == TransactionResult::Kind::Committed);
        return r2.chain;
    }

    // a fresh execution state at the start of function fn of the instance
    // at address 2, called by address 1
    ExecState atFunction(ChainState chain, const std::string& fn,
                         std::vector<Value> args = {}, const U256& value = 0)
    {
        const auto* f = ast::ProgramIndex(solid).function(solid.contracts[0].name, fn);
        REQUIRE(f != nullptr);
        return interp.make_exec_state(std::move(chain), 1, 2, *f, 1, value, args);
    }

    TransactionResult exec(const ChainState& chain, const std::string& fn,
                           std::vector<Value> args = {}, const U256& value = 0,
                           const sem::Address& src = 1)
    {
        return interp.apply_transaction(chain, Transaction::executeContract(
                                                   src, 2, solid.contracts[0].name, fn, value,
                                                   std::move(args)));
    }
};

// runs one step and returns the state (asserting the step is deterministic)
ExecState step1(World& w, ExecState st)
{
    auto succ = sem::step_successors(w.solid, test_config(8), st);
    REQUIRE(succ.size() == 1);
    CHECK_FALSE(succ[0].first.has_value());
    return succ[0].second;
}

const ast::Stmt& next_stmt(const ExecState& st)
{
    return *st.stack.back().code.back();
}

} // namespace

// ---------------------------------------------------------------------------
// expression evaluation

TEST_CASE("arithmetic wraps around 2^256")
{
    World w("contract C { function f(uint a, uint b) public returns (uint r) { r = a + b; }"
            " function g(int a, int b) public returns (int r) { r = a - b; }"
            " function h(uint a, uint b) public returns (uint r) { r = a * b; }"
            " function d(int a, int b) public returns (int r) { require(b != 0); r = a / b; } }");
    ChainState chain = w.deployed();
    auto call = [&](const std::string& fn, Value a, Value b) {
        ExecState st = w.atFunction(chain, fn, {a, b});
        w.interp.run(st);
        REQUIRE(st.status == ExecState::Status::Complete);
        return st.stack[0].locals.at("r");
    };
    CHECK(call("f", Value::uintv(u256_max()), Value::uintv(1)).bits == 0);
    CHECK(call("h", Value::uintv(u256_max()), Value::uintv(u256_max())).bits == 1);
    // signed wrap: -2^255 - 1 == 2^255 - 1
    Value minInt = Value::intv(u256_sign_bit());
    Value out = call("g", minInt, Value::intv(1));
    CHECK(out.bits == u256_sign_bit() - 1);
    // truncating signed division: -7 / 2 == -3
    Value minus7 = Value::intv(int_wrap(Wide(-7)));
    CHECK(int_to_string(call("d", minus7, Value::intv(2)).bits) == "-3");
    // -2^255 / -1 wraps back to -2^255
    Value minusOne = Value::intv(int_wrap(Wide(-1)));
    CHECK(call("d", minInt, minusOne).bits == u256_sign_bit());
}

TEST_CASE("deposit credits the account with msg.value")
{
    World w(read_fixture("wallet.sol"));
    ChainState chain = w.deployed();
    auto r1 = w.exec(chain, "open");
    REQUIRE(r1.kind == TransactionResult::Kind::Committed);
    auto r2 = w.exec(r1.chain, "deposit", {}, 5);
    REQUIRE(r2.kind == TransactionResult::Kind::Committed);
    const sem::AddressCell& cell = *r2.chain.find(2);
    const sem::RefCell& accounts = cell.storage.at(cell.members.at("accounts"));
    const Value* acct = accounts.value.findOverride(sem::scalar_key(Value::address(1)));
    REQUIRE(acct != nullptr);
    const sem::RefCell& tree = cell.storage.at(acct->ref);
    for (const auto& [n, v] : tree.value.members)
        if (n == "balance")
            CHECK(v.bits == 5);
}

// ---------------------------------------------------------------------------
// state construction

TEST_CASE("set_balance moves value and rejects overdrafts")
{
    ChainState s;
    s.at(1).type = sem::AddressKind::simple();
    s.at(1).balance = 10;
    s.at(2).type = sem::AddressKind::simple();
    CHECK(sem::set_balance(s, 1, 2, 0));
    CHECK(s.balanceOf(1) == 10);
    CHECK(sem::set_balance(s, 1, 2, 7));
    CHECK(s.balanceOf(1) == 3);
    CHECK(s.balanceOf(2) == 7);
    ChainState before = s;
    CHECK_FALSE(sem::set_balance(s, 1, 2, 7));
    CHECK(s == before);
}

TEST_CASE("init_contract builds the member cell trees")
{
    ast::Program solid = load_solid(read_fixture("wallet.sol"));
    ast::ProgramIndex idx(solid);
    ChainState s;
    sem::init_contract(s, 2, "Wallet", idx);
    const sem::AddressCell& cell = *s.find(2);
    CHECK(cell.type.contract == "Wallet");
    CHECK(cell.balance == 0);
    REQUIRE(cell.members.count("accounts"));
    const sem::RefCell& mapping = cell.storage.at(cell.members.at("accounts"));
    CHECK(mapping.value.kind == Value::Kind::Mapping);
    // the reference-typed range materialises per key, distinct trees per key
    sem::RefMap& storage = s.at(2).storage;
    Value a = sem::map_read(storage, storage.at(cell.members.at("accounts")).value,
                            sem::scalar_key(Value::address(7)), mapping.type->range, idx);
    Value b = sem::map_read(storage, storage.at(cell.members.at("accounts")).value,
                            sem::scalar_key(Value::address(8)), mapping.type->range, idx);
    CHECK(a.kind == Value::Kind::Ref);
    CHECK(b.kind == Value::Kind::Ref);
    CHECK(a.ref != b.ref);
    // second read of the same key returns the same tree
    Value a2 = sem::map_read(storage, storage.at(cell.members.at("accounts")).value,
                             sem::scalar_key(Value::address(7)), mapping.type->range, idx);
    CHECK(a2.ref == a.ref);

    // a memberless contract allocates nothing
    ast::Program mini = load_solid("contract M { function f() public {} }");
    ast::ProgramIndex midx(mini);
    ChainState s2;
    sem::init_contract(s2, 3, "M", midx);
    CHECK(s2.find(3)->members.empty());
    CHECK(s2.find(3)->storage.cells.empty());

    // a scalar member lives in a cell initialised to zero
    ast::Program scalar = load_solid("contract X { uint x; function f() public {} }");
    ast::ProgramIndex sidx(scalar);
    ChainState s3;
    sem::init_contract(s3, 4, "X", sidx);
    const sem::AddressCell& xc = *s3.find(4);
    CHECK(xc.storage.at(xc.members.at("x")).value.bits == 0);
}

TEST_CASE("alloc_tree shapes and injectivity")
{
    ast::Program p = load_solid(
        "contract C { struct S { uint a; uint[] b; } function f() public {} }");
    ast::ProgramIndex idx(p);
    sem::RefMap m;
    // dynamic array: length 0, data defaults to 0
    sem::RefId arr = sem::alloc_tree(m, ast::type_array(ast::type_uint()), idx);
    CHECK(m.at(arr).value.bits == 0);
    CHECK(m.at(arr).value.defaultValue().bits == 0);
    // struct: member b is a fresh reference to a separate cell
    sem::RefId st = sem::alloc_tree(m, ast::type_struct("S"), idx);
    const Value& sv = m.at(st).value;
    REQUIRE(sv.kind == Value::Kind::Record);
    sem::RefId bref = 0;
    for (const auto& [n, v] : sv.members)
        if (n == "b")
            bref = v.ref;
    REQUIRE(bref != 0);
    CHECK(m.at(bref).type->isArray());
    // consecutive allocations use disjoint references
    sem::RefId t1 = sem::alloc_tree(m, ast::type_struct("S"), idx);
    sem::RefId t2 = sem::alloc_tree(m, ast::type_struct("S"), idx);
    CHECK(t1 != t2);
    ChainState empty;
    CHECK(allocation_injective(empty, &m));
}

TEST_CASE("allocation injectivity survives random allocations and lazy reads")
{
    ast::Program p = load_solid(
        "contract C { struct S { uint a; uint[] b; } struct T { S s; mapping(uint => S) m; }"
        " mapping(address => T) tm; uint[] xs; function f() public {} }");
    ast::ProgramIndex idx(p);
    ChainState chain;
    sem::init_contract(chain, 2, "C", idx);
    Rng rng(42);
    sem::RefMap mem;
    std::vector<ast::TypePtr> types = {
        ast::type_struct("S"),
        ast::type_array(ast::type_uint()),
        ast::type_array(ast::type_struct("S")),
        ast::type_uint(),
    };
    for (int i = 0; i < 100; ++i) {
        sem::alloc_tree(mem, types[rng.below(types.size())], idx);
        // lazy materialisation inside storage on random keys
        sem::AddressCell& cell = chain.at(2);
        sem::RefCell& tmCell = cell.storage.at(cell.members.at("tm"));
        Value tree = sem::map_read(cell.storage, tmCell.value,
                                   sem::scalar_key(Value::address(rng.below(50))),
                                   tmCell.type->range, idx);
        REQUIRE(tree.kind == Value::Kind::Ref);
        // descend into the nested mapping member occasionally
        if (rng.flip()) {
            sem::RefCell& tCell = cell.storage.at(tree.ref);
            for (auto& [n, v] : tCell.value.members) {
                if (n == "m") {
                    sem::RefCell& mCell = cell.storage.at(v.ref);
                    sem::map_read(cell.storage, mCell.value,
                                  sem::scalar_key(Value::uintv(rng.below(10))),
                                  mCell.type->range, idx);
                }
            }
        }
        CHECK(allocation_injective(chain, &mem));
    }
}

// ---------------------------------------------------------------------------
// simple statements, one test per rule

TEST_CASE("while with a true condition prepends its body and stays")
{
    World w("contract C { uint x; function f() public { while (x < 2) { x = x + 1; } } }");
    ExecState st = w.atFunction(w.deployed(), "f");
    // skip the inserted zero-payment require
    st = step1(w, st);
    size_t before = st.stack[0].code.size();
    ExecState after = step1(w, st);
    // body (1 stmt) plus the loop itself replace the loop
    CHECK(after.stack[0].code.size() == before + 1);
    CHECK(next_stmt(after).kind == ast::Stmt::Kind::Assignment);
}

TEST_CASE("while with a false condition falls through")
{
    World w("contract C { uint x; function f() public { while (x < 0) { x = x + 1; } } }");
    ExecState st = step1(w, w.atFunction(w.deployed(), "f"));
    ExecState after = step1(w, st);
    CHECK(after.stack[0].code.empty());
}

TEST_CASE("if selects the matching branch")
{
    World w("contract C { uint x; function f(bool c) public {"
            " if (c) { x = 1; } else { x = 2; } } }");
    ChainState chain = w.deployed();
    auto r1 = w.exec(chain, "f", {Value::boolean(true)});
    REQUIRE(r1.kind == TransactionResult::Kind::Committed);
    const sem::AddressCell& c1 = *r1.chain.find(2);
    CHECK(c1.storage.at(c1.members.at("x")).value.bits == 1);
    auto r2 = w.exec(chain, "f", {Value::boolean(false)});
    const sem::AddressCell& c2 = *r2.chain.find(2);
    CHECK(c2.storage.at(c2.members.at("x")).value.bits == 2);
}

TEST_CASE("variable declarations are runtime no-ops")
{
    World w("contract C { function f() public { uint x; x = x; } }");
    ExecState st = step1(w, w.atFunction(w.deployed(), "f"));
    REQUIRE(next_stmt(st).kind == ast::Stmt::Kind::Assignment); // initializer x = 0
    st = step1(w, st);
    REQUIRE(next_stmt(st).kind == ast::Stmt::Kind::VariableDeclarationStatement);
    size_t before = st.stack[0].code.size();
    ExecState after = step1(w, st);
    CHECK(after.stack[0].code.size() == before - 1);
    CHECK(after.stack[0].locals.at("x").bits == 0);
}

TEST_CASE("assignment updates locals and storage by location")
{
    World w("contract C { uint g; function f() public { uint x; x = 1; g = x + 2; } }");
    auto r = w.exec(w.deployed(), "f");
    REQUIRE(r.kind == TransactionResult::Kind::Committed);
    const sem::AddressCell& cell = *r.chain.find(2);
    CHECK(cell.storage.at(cell.members.at("g")).value.bits == 3);
}

TEST_CASE("return writes the out parameters and clears the code")
{
    World w("contract C { function f() public returns (uint a, uint b) { return (4, 9); } }");
    ExecState st = w.atFunction(w.deployed(), "f");
    w.interp.run(st);
    REQUIRE(st.status == ExecState::Status::Complete);
    CHECK(st.stack[0].locals.at("a").bits == 4);
    CHECK(st.stack[0].locals.at("b").bits == 9);
}

TEST_CASE("alloc-memory binds a fresh default tree")
{
    World w("contract C { struct S { uint a; uint[] b; }"
            " function f() public { S memory t; t.a = t.a; } }");
    ExecState st = w.atFunction(w.deployed(), "f");
    w.interp.run(st);
    REQUIRE(st.status == ExecState::Status::Complete);
    const Value& t = st.stack[0].locals.at("t");
    REQUIRE(t.kind == Value::Kind::Ref);
    const sem::RefCell& cell = st.memory.at(t.ref);
    CHECK(cell.type->kind == ast::TypeKind::Struct);
}

TEST_CASE("revert fails the execution")
{
    World w("contract C { function f() public { revert(); } }");
    auto r = w.exec(w.deployed(), "f");
    CHECK(r.kind == TransactionResult::Kind::Invalid);
}

TEST_CASE("require continues on true and fails on false")
{
    World w("contract C { uint x; function f(bool c) public { require(c); x = 1; } }");
    CHECK(w.exec(w.deployed(), "f", {Value::boolean(true)}).kind
          == TransactionResult::Kind::Committed);
    CHECK(w.exec(w.deployed(), "f", {Value::boolean(false)}).kind
          == TransactionResult::Kind::Invalid);
}

TEST_CASE("assume behaves like require; assert raises an error")
{
    World w("import \"Verification.sol\";"
            "contract C { function f(bool c) public { Verification.Assume(c); }"
            " function g(bool c) public { Verification.Assert(c); } }");
    ChainState chain = w.deployed();
    CHECK(w.exec(chain, "f", {Value::boolean(true)}).kind == TransactionResult::Kind::Committed);
    CHECK(w.exec(chain, "f", {Value::boolean(false)}).kind == TransactionResult::Kind::Invalid);
    CHECK(w.exec(chain, "g", {Value::boolean(true)}).kind == TransactionResult::Kind::Committed);
    auto err = w.exec(chain, "g", {Value::boolean(false)});
    CHECK(err.kind == TransactionResult::Kind::Error);
    CHECK(err.errorSite.find("g:") == 0);
}

TEST_CASE("transfer to a simple address moves the value deterministically")
{
    World w("contract C { function f() public payable { msg.sender.transfer(3); } }");
    ChainState chain = w.deployed();
    auto r = w.exec(chain, "f", {}, 5);
    REQUIRE(r.kind == TransactionResult::Kind::Committed);
    CHECK(r.chain.balanceOf(2) == 2);
    CHECK(r.chain.balanceOf(1) == 98);
}

TEST_CASE("transfer with insufficient balance fails")
{
    World w("contract C { function f() public { msg.sender.transfer(3); } }");
    auto r = w.exec(w.deployed(), "f");
    CHECK(r.kind == TransactionResult::Kind::Invalid);
}

TEST_CASE("transfer to a contract has success and failure conclusions")
{
    World w("contract C { address other; function setup(address o) public { other = o; }"
            " function f() public payable { other.transfer(1); } }",
            5);
    // deploy a second instance to act as the contract destination
    ChainState chain = w.deployed();
    auto r0 = w.interp.apply_transaction(chain, Transaction::createContract(1, "C", 0, {}));
    REQUIRE(r0.kind == TransactionResult::Kind::Committed);
    auto r1 = w.exec(r0.chain, "setup", {Value::address(3)});
    REQUIRE(r1.kind == TransactionResult::Kind::Committed);

    // drive to the transfer statement, then enumerate its conclusions
    ExecState st = w.atFunction(r1.chain, "f", {}, 2);
    REQUIRE(sem::set_balance(st.chain, 1, 2, 2));
    while (next_stmt(st).kind != ast::Stmt::Kind::Transfer)
        st = step1(w, st);
    auto succ = sem::step_successors(w.solid, test_config(5), st);
    REQUIRE(succ.size() == 2);
    CHECK(succ[0].first->kind == sem::Choice::Kind::TransferOutcome);
    CHECK(succ[0].first->value.isTrue());
    CHECK(succ[0].second.chain.balanceOf(3) == 1);
    CHECK(succ[0].second.running());
    CHECK_FALSE(succ[1].first->value.isTrue());
    CHECK(succ[1].second.status == ExecState::Status::Fail);
}

TEST_CASE("transfer to an unused address fails")
{
    World w("contract C { function f(address d) public payable { d.transfer(1); } }", 5);
    auto r = w.exec(w.deployed(), "f", {Value::address(5)}, 2);
    CHECK(r.kind == TransactionResult::Kind::Invalid);
}

TEST_CASE("send to a simple address yields true with the value moved")
{
    World w("contract C { bool ok; function f() public payable { ok = msg.sender.send(1); } }");
    auto r = w.exec(w.deployed(), "f", {}, 2);
    REQUIRE(r.kind == TransactionResult::Kind::Committed);
    const sem::AddressCell& cell = *r.chain.find(2);
    CHECK(cell.storage.at(cell.members.at("ok")).value.bits == 1);
    CHECK(r.chain.balanceOf(1) == 99);
}

TEST_CASE("send to a contract yields both outcomes")
{
    World w("contract C { bool ok; address other; function setup(address o) public { other = o; }"
            " function f() public payable { ok = other.send(1); } }",
            5);
    ChainState chain = w.deployed();
    auto r0 = w.interp.apply_transaction(chain, Transaction::createContract(1, "C", 0, {}));
    auto r1 = w.exec(r0.chain, "setup", {Value::address(3)});
    ExecState st = w.atFunction(r1.chain, "f", {}, 2);
    REQUIRE(sem::set_balance(st.chain, 1, 2, 2));
    while (next_stmt(st).kind != ast::Stmt::Kind::Send)
        st = step1(w, st);
    auto succ = sem::step_successors(w.solid, test_config(5), st);
    REQUIRE(succ.size() == 2);
    // success first: value moved, result true
    CHECK(succ[0].first->value.isTrue());
    CHECK(succ[0].second.chain.balanceOf(3) == 1);
    // failure second: no transfer, result false, execution continues
    CHECK_FALSE(succ[1].first->value.isTrue());
    CHECK(succ[1].second.chain.balanceOf(3) == 0);
    CHECK(succ[1].second.running());
}

// ---------------------------------------------------------------------------
// function-call statements

TEST_CASE("contract call: completion updates the left-hand sides from the outs")
{
    World w("contract C { uint got; C self;"
            " function setup() public { self = this; }"
            " function callee(uint v) public returns (uint r) { r = v + 1; }"
            " function f() public { uint x; x = self.callee(4); got = x; } }");
    ChainState chain = w.deployed();
    auto r0 = w.exec(chain, "setup");
    auto r = w.exec(r0.chain, "f");
    REQUIRE(r.kind == TransactionResult::Kind::Committed);
    const sem::AddressCell& cell = *r.chain.find(2);
    CHECK(cell.storage.at(cell.members.at("got")).value.bits == 5);
}

TEST_CASE("contract call: callee failure propagates to the caller")
{
    World w("contract C { function callee() public { revert(); }"
            " function f() public { callee(); } }");
    CHECK(w.exec(w.deployed(), "f").kind == TransactionResult::Kind::Invalid);
}

TEST_CASE("contract call: callee error propagates eagerly")
{
    World w("import \"Verification.sol\";"
            "contract C { function callee() public { Verification.Assert(false); }"
            " function f() public { callee(); } }");
    auto r = w.exec(w.deployed(), "f");
    CHECK(r.kind == TransactionResult::Kind::Error);
    CHECK(r.errorSite.find("callee:") == 0);
}

TEST_CASE("low-level call to a simple address transfers and returns true")
{
    World w("contract C { bool ok; function f() public payable {"
            " ok = msg.sender.call.value(1)(\"\"); } }");
    auto r = w.exec(w.deployed(), "f", {}, 2);
    REQUIRE(r.kind == TransactionResult::Kind::Committed);
    const sem::AddressCell& cell = *r.chain.find(2);
    CHECK(cell.storage.at(cell.members.at("ok")).value.bits == 1);
    CHECK(r.chain.balanceOf(1) == 99);
}

TEST_CASE("low-level call to a contract runs a chosen interface function")
{
    World w("contract C { uint hits; bool ok; address other;"
            " function setup(address o) public { other = o; }"
            " function poke() public { hits = hits + 1; }"
            " function f() public { ok = other.call.value(0)(\"\"); } }",
            5);
    ChainState chain = w.deployed();
    auto r0 = w.interp.apply_transaction(chain, Transaction::createContract(1, "C", 0, {}));
    auto r1 = w.exec(r0.chain, "setup", {Value::address(3)});
    ExecState st = w.atFunction(r1.chain, "f");
    while (next_stmt(st).kind != ast::Stmt::Kind::Call)
        st = step1(w, st);
    auto succ = sem::step_successors(w.solid, test_config(5), st);
    // one successor per interface function of the callee
    REQUIRE(succ.size() == 3);
    CHECK(succ[0].first->kind == sem::Choice::Kind::CallTarget);
    CHECK(succ[0].first->text == "setup");
    CHECK(succ[1].first->text == "poke");
    CHECK(succ[2].first->text == "f");
}

TEST_CASE("low-level call: callee failure restores state and yields false")
{
    World w("contract C { uint x; bool ok; address other;"
            " function setup(address o) public { other = o; }"
            " function boom() public { revert(); }"
            " function f() public payable { x = 7; ok = other.call.value(1)(\"\"); x = x + 1; } }",
            5);
    ChainState chain = w.deployed();
    auto r0 = w.interp.apply_transaction(chain, Transaction::createContract(1, "C", 0, {}));
    auto r1 = w.exec(r0.chain, "setup", {Value::address(3)});
    // scripted choice: pick boom, which reverts
    sem::Choice pick;
    pick.kind = sem::Choice::Kind::CallTarget;
    pick.text = "boom";
    sem::ScriptedChoiceProvider prov({pick});
    w.interp.setProvider(prov);
    auto r = w.interp.apply_transaction(
        r1.chain, Transaction::executeContract(1, 2, "C", "f", 2, {}));
    w.interp.setProvider(w.defaults);
    REQUIRE(r.kind == TransactionResult::Kind::Committed);
    const sem::AddressCell& cell = *r.chain.find(2);
    CHECK(cell.storage.at(cell.members.at("ok")).value.bits == 0); // false
    CHECK(cell.storage.at(cell.members.at("x")).value.bits == 8);
    // the transferred value came back with the rollback
    CHECK(r.chain.balanceOf(3) == 0);
}

TEST_CASE("low-level call: callee error is never rolled back")
{
    World w("import \"Verification.sol\";"
            "contract C { bool ok; address other;"
            " function setup(address o) public { other = o; }"
            " function boom() public { Verification.Assert(false); }"
            " function f() public { ok = other.call.value(0)(\"\"); } }",
            5);
    ChainState chain = w.deployed();
    auto r0 = w.interp.apply_transaction(chain, Transaction::createContract(1, "C", 0, {}));
    auto r1 = w.exec(r0.chain, "setup", {Value::address(3)});
    sem::Choice pick;
    pick.kind = sem::Choice::Kind::CallTarget;
    pick.text = "boom";
    sem::ScriptedChoiceProvider prov({pick});
    w.interp.setProvider(prov);
    auto r = w.interp.apply_transaction(
        r1.chain, Transaction::executeContract(1, 2, "C", "f", 0, {}));
    w.interp.setProvider(w.defaults);
    CHECK(r.kind == TransactionResult::Kind::Error);
}

TEST_CASE("create-contract statement deploys at the lowest unused address")
{
    World w("contract C { address child; function f() public { C c = new C(); child = c; } }",
            5);
    auto r = w.exec(w.deployed(), "f");
    REQUIRE(r.kind == TransactionResult::Kind::Committed);
    const sem::AddressCell& cell = *r.chain.find(2);
    CHECK(cell.storage.at(cell.members.at("child")).value.bits == 3);
    CHECK(r.chain.kindOf(3).contract == "C");
}

TEST_CASE("create-contract statement propagates constructor failures")
{
    World w("contract C { function f(bool c) public { D d = new D(c); d = d; } }"
            " contract D { constructor(bool c) public { require(c); } function g() public {} }",
            5);
    CHECK(w.exec(w.deployed(), "f", {Value::boolean(true)}).kind
          == TransactionResult::Kind::Committed);
    CHECK(w.exec(w.deployed(), "f", {Value::boolean(false)}).kind
          == TransactionResult::Kind::Invalid);
}

TEST_CASE("create-contract statement propagates constructor errors")
{
    World w("import \"Verification.sol\";"
            "contract C { function f() public { D d = new D(); d = d; } }"
            " contract D { constructor() public { Verification.Assert(false); } function g() public {} }",
            5);
    CHECK(w.exec(w.deployed(), "f").kind == TransactionResult::Kind::Error);
}

// ---------------------------------------------------------------------------
// transactions (the blockchain rules)

TEST_CASE("create-address claims the lowest unused address with its balance")
{
    World w("contract C { function f() public {} }");
    ChainState chain;
    auto r = w.interp.apply_transaction(chain, Transaction::createAddress(100));
    REQUIRE(r.kind == TransactionResult::Kind::Committed);
    CHECK(r.chain.kindOf(1).k == sem::AddressKind::Simple);
    CHECK(r.chain.balanceOf(1) == 100);
    auto r2 = w.interp.apply_transaction(r.chain, Transaction::createAddress(1));
    CHECK(r2.chain.kindOf(2).k == sem::AddressKind::Simple);
}

TEST_CASE("currency transfer honours its premises")
{
    World w("contract C { function f() public {} }");
    ChainState chain;
    auto r1 = w.interp.apply_transaction(chain, Transaction::createAddress(10));
    auto r2 = w.interp.apply_transaction(r1.chain, Transaction::createAddress(0));
    auto ok = w.interp.apply_transaction(r2.chain, Transaction::currencyTransfer(1, 2, 7));
    REQUIRE(ok.kind == TransactionResult::Kind::Committed);
    CHECK(ok.chain.balanceOf(1) == 3);
    CHECK(ok.chain.balanceOf(2) == 7);
    // insufficient balance blocks the transaction
    auto bad = w.interp.apply_transaction(ok.chain, Transaction::currencyTransfer(1, 2, 7));
    CHECK(bad.kind == TransactionResult::Kind::Invalid);
    // unused source or destination blocks it too
    CHECK(w.interp.apply_transaction(ok.chain, Transaction::currencyTransfer(4, 1, 0)).kind
          == TransactionResult::Kind::Invalid);
    CHECK(w.interp.apply_transaction(ok.chain, Transaction::currencyTransfer(1, 4, 0)).kind
          == TransactionResult::Kind::Invalid);
}

TEST_CASE("create-contract runs the constructor to completion")
{
    World w("contract C { uint x; constructor(uint v) public { x = v; } function f() public {} }");
    ChainState chain;
    auto r1 = w.interp.apply_transaction(chain, Transaction::createAddress(10));
    auto r2 = w.interp.apply_transaction(
        r1.chain, Transaction::createContract(1, "C", 0, {Value::uintv(9)}));
    REQUIRE(r2.kind == TransactionResult::Kind::Committed);
    const sem::AddressCell& cell = *r2.chain.find(2);
    CHECK(cell.storage.at(cell.members.at("x")).value.bits == 9);
    // failing constructor leaves no deployment behind
    World w2("contract C { constructor() public { revert(); } function f() public {} }");
    auto r3 = w2.interp.apply_transaction(r1.chain, Transaction::createContract(1, "C", 0, {}));
    CHECK(r3.kind == TransactionResult::Kind::Invalid);
}

TEST_CASE("create-contract endows the instance with the transferred value")
{
    World w("contract C { constructor() public payable {} function f() public {} }");
    ChainState chain;
    auto r1 = w.interp.apply_transaction(chain, Transaction::createAddress(10));
    auto r2 = w.interp.apply_transaction(r1.chain, Transaction::createContract(1, "C", 4, {}));
    REQUIRE(r2.kind == TransactionResult::Kind::Committed);
    CHECK(r2.chain.balanceOf(1) == 6);
    CHECK(r2.chain.balanceOf(2) == 4);
    CHECK(r2.chain.totalBalance() == 10);
}

TEST_CASE("execute-contract checks the deployed type and function")
{
    World w(read_fixture("wallet.sol"));
    ChainState chain = w.deployed();
    CHECK(w.exec(chain, "open").kind == TransactionResult::Kind::Committed);
    CHECK(w.interp.apply_transaction(chain, Transaction::executeContract(1, 1, "Wallet", "open",
                                                                         0, {}))
              .kind
          == TransactionResult::Kind::Invalid); // address 1 is not a Wallet
    CHECK(w.exec(chain, "nothere").kind == TransactionResult::Kind::Invalid);
    // withdrawing more than the balance fails the require and invalidates
    auto open = w.exec(chain, "open");
    CHECK(w.exec(open.chain, "withdraw", {Value::uintv(5)}).kind
          == TransactionResult::Kind::Invalid);
}

TEST_CASE("mint-block only moves time forward")
{
    World w("contract C { function f() public {} }");
    ChainState chain;
    auto r = w.interp.apply_transaction(chain, Transaction::mintBlock(5));
    REQUIRE(r.kind == TransactionResult::Kind::Committed);
    CHECK(r.chain.time == 5);
    CHECK(w.interp.apply_transaction(r.chain, Transaction::mintBlock(5)).kind
          == TransactionResult::Kind::Invalid);
    CHECK(w.interp.apply_transaction(r.chain, Transaction::mintBlock(4)).kind
          == TransactionResult::Kind::Invalid);
}

// ---------------------------------------------------------------------------
// global properties

TEST_CASE("currency conservation and revert atomicity over random scripts")
{
    int checkedTx = 0;
    for (uint64_t seed = 1; checkedTx < 1500; ++seed) {
        GenOptions opts;
        opts.withAsserts = false; // scripts should exercise commits and reverts
        ast::Program solid = load_solid(generate_contract(seed, opts));
        sem::InterpreterConfig cfg = test_config();
        sem::DefaultChoiceProvider prov;
        sem::Interpreter interp(solid, cfg, prov);
        ChainState chain;
        for (const auto& tx : generate_script(seed * 977, solid, cfg, 8)) {
            U256 before = chain.totalBalance();
            auto r = interp.apply_transaction(chain, tx);
            ++checkedTx;
            if (r.kind == TransactionResult::Kind::Committed) {
                U256 after = r.chain.totalBalance();
                if (tx.kind == Transaction::Kind::CreateAddress)
                    CHECK(after == before + tx.value);
                else
                    CHECK(after == before);
                chain = r.chain;
            } else {
                // invalid transactions leave the chain untouched
                CHECK(r.chain == chain);
            }
        }
    }
    CHECK(checkedTx >= 1500);
}

TEST_CASE("replaying recorded choices reproduces the identical outcome")
{
    for (uint64_t seed = 1; seed <= 20; ++seed) {
        ast::Program solid = load_solid(generate_contract(seed));
        sem::InterpreterConfig cfg = test_config();
        sem::DefaultChoiceProvider defaults;
        sem::Interpreter interp(solid, cfg, defaults);
        ChainState chain;
        for (const auto& tx : generate_script(seed * 31, solid, cfg, 6)) {
            sem::RecordingChoiceProvider rec(defaults);
            interp.setProvider(rec);
            auto r1 = interp.apply_transaction(chain, tx);
            sem::ScriptedChoiceProvider scripted(rec.recorded());
            interp.setProvider(scripted);
            auto r2 = interp.apply_transaction(chain, tx);
            CHECK(r1.kind == r2.kind);
            CHECK(sem::canonical_chain(r1.chain) == sem::canonical_chain(r2.chain));
            if (r1.kind == TransactionResult::Kind::Committed)
                chain = r1.chain;
        }
    }
}

TEST_CASE("step budget surfaces as its own outcome")
{
    World w("contract C { uint x; function f() public { while (true) { x = x + 1; } } }");
    auto r = w.exec(w.deployed(), "f");
    CHECK(r.kind == TransactionResult::Kind::BudgetExhausted);
}

TEST_CASE("storage pointers alias their target")
{
    World w("contract C { struct S { uint a; } S s0; uint got;"
            " function f() public { S storage p = s0; p.a = 5; got = s0.a; } }");
    auto r = w.exec(w.deployed(), "f");
    REQUIRE(r.kind == TransactionResult::Kind::Committed);
    const sem::AddressCell& cell = *r.chain.find(2);
    CHECK(cell.storage.at(cell.members.at("got")).value.bits == 5);
}

TEST_CASE("memory pointers alias each other but deep-copy from storage")
{
    World w("contract C { uint[] xs; uint got1; uint got2;"
            " function setup() public { xs.push(7); }"
            " function f() public {"
            "   uint[] memory a = xs;"  // deep copy out of storage
            "   uint[] memory b = a;"   // alias in memory
            "   b[0] = 9;"
            "   got1 = a[0];"           // sees the aliased write
            "   got2 = xs[0];"          // storage copy source unchanged
            " } }");
    ChainState chain = w.deployed();
    auto r0 = w.exec(chain, "setup");
    REQUIRE(r0.kind == TransactionResult::Kind::Committed);
    auto r = w.exec(r0.chain, "f");
    REQUIRE(r.kind == TransactionResult::Kind::Committed);
    const sem::AddressCell& cell = *r.chain.find(2);
    CHECK(cell.storage.at(cell.members.at("got1")).value.bits == 9);
    CHECK(cell.storage.at(cell.members.at("got2")).value.bits == 7);
}

TEST_CASE("tuple assignment receives multiple results")
{
    World w("contract C { uint a; uint b;"
            " function two() public returns (uint x, uint y) { return (3, 4); }"
            " function f() public { uint p; uint q; (p, q) = two(); a = p; b = q; } }");
    auto r = w.exec(w.deployed(), "f");
    REQUIRE(r.kind == TransactionResult::Kind::Committed);
    const sem::AddressCell& cell = *r.chain.find(2);
    CHECK(cell.storage.at(cell.members.at("a")).value.bits == 3);
    CHECK(cell.storage.at(cell.members.at("b")).value.bits == 4);
}

TEST_CASE("reference-typed results pass through shared memory")
{
    World w("contract C { uint got;"
            " function mk() public returns (uint[] memory r) {"
            "   r = new uint[](1); r[0] = 6; }"
            " function f() public { uint[] memory v = mk(); got = v[0]; } }");
    auto r = w.exec(w.deployed(), "f");
    REQUIRE(r.kind == TransactionResult::Kind::Committed);
    const sem::AddressCell& cell = *r.chain.find(2);
    CHECK(cell.storage.at(cell.members.at("got")).value.bits == 6);
}
