// solidbmc: bounded model checking toolchain for a Solidity subset
// Copyright 2026 The solidbmc Authors.
// SPDX-License-Identifier: Apache-2.0
#include "explorer/explorer.hpp"

#include "frontend/printer.hpp"

#include <chrono>
#include <functional>
#include <sstream>

namespace solidbmc::explorer {

using namespace ast;
using sem::AddressKind;
using sem::ChainState;
using sem::ChoiceProvider;
using sem::ExecState;
using sem::Frame;
using sem::Interpreter;
using sem::RefCell;
using sem::RefId;
using sem::RefMap;
using sem::ScalarKey;

namespace {

// ---------------------------------------------------------------------------
// Trail enumeration: DFS over the tree of provider decisions by re-running a
// deterministic body with a pinned prefix.

class TrailProvider : public ChoiceProvider {
public:
    explicit TrailProvider(const std::vector<size_t>& pin)
        : pin_(&pin)
    {
    }
    size_t choose(const std::string& site, const std::vector<Choice>& options) override
    {
        size_t p = cursor_ < pin_->size() ? (*pin_)[cursor_] : 0;
        if (p >= options.size())
            throw InternalError("trail out of range at " + site);
        ++cursor_;
        taken_.push_back({p, options.size()});
        recorded_.push_back(options[p]);
        return p;
    }
    const std::vector<std::pair<size_t, size_t>>& taken() const { return taken_; }
    const std::vector<Choice>& recorded() const { return recorded_; }

private:
    const std::vector<size_t>* pin_;
    size_t cursor_ = 0;
    std::vector<std::pair<size_t, size_t>> taken_;
    std::vector<Choice> recorded_;
};

// run(provider) must be deterministic in the provider's decisions.
// leaf(outcome, choices) returning true aborts the whole enumeration.
template <typename Run, typename Leaf>
bool enumerate_paths(Run run, Leaf leaf)
{
    std::vector<size_t> pin;
    while (true) {
        TrailProvider prov(pin);
        auto outcome = run(prov);
        if (leaf(outcome, prov.recorded()))
            return true;
        const auto& t = prov.taken();
        size_t k = t.size();
        while (k > 0 && t[k - 1].first + 1 >= t[k - 1].second)
            --k;
        if (k == 0)
            return false;
        pin.clear();
        for (size_t i = 0; i + 1 < k; ++i)
            pin.push_back(t[i].first);
        pin.push_back(t[k - 1].first + 1);
    }
}

// ---------------------------------------------------------------------------
// Domains and static relevance

struct Domains {
    std::vector<Address> universe;
    std::vector<U256> valueDomain;
    std::vector<U256> timeDomain;
    bool readsBalance = false;
    bool readsOrigin = false;
    bool readsTime = false;
};

void scan_exprs(const ExprPtr& e, Domains& d)
{
    if (!e)
        return;
    switch (e->memberKind) {
    case MemberKind::Balance: d.readsBalance = true; break;
    case MemberKind::TxOrigin: d.readsOrigin = true; break;
    case MemberKind::BlockTimestamp: d.readsTime = true; break;
    default: break;
    }
    scan_exprs(e->base, d);
    scan_exprs(e->index, d);
    scan_exprs(e->lhs, d);
    scan_exprs(e->rhs, d);
}

void scan_stmts(const StmtList& stmts, Domains& d)
{
    for (const auto& s : stmts) {
        for (const ExprPtr* e : {&s->condition, &s->lhs, &s->rhs, &s->target, &s->value,
                                 &s->source, &s->dest, &s->address, &s->arg, &s->array})
            scan_exprs(*e, d);
        for (const auto& e : s->callLhs)
            scan_exprs(e, d);
        for (const auto& e : s->args)
            scan_exprs(e, d);
        scan_stmts(s->body, d);
        scan_stmts(s->elseBody, d);
    }
}

Domains make_domains(const Program& p, const HarnessConfig& cfg)
{
    Domains d;
    for (int i = 1; i <= cfg.addressCount; ++i)
        d.universe.push_back(Address(i));
    d.valueDomain = cfg.valueDomain;
    for (const auto& c : p.contracts)
        for (const auto& f : c.functions)
            scan_stmts(f.body, d);
    d.timeDomain = cfg.timeDomain.empty() ? cfg.valueDomain : cfg.timeDomain;
    return d;
}

Choice havoc_choice(const std::string& site, Value v)
{
    Choice c;
    c.kind = Choice::Kind::HavocValue;
    c.site = site;
    c.value = std::move(v);
    return c;
}

std::vector<Choice> scalar_options(const std::string& site, const TypePtr& t, const Domains& d,
                                   const ProgramIndex& idx)
{
    std::vector<Choice> out;
    switch (t->kind) {
    case TypeKind::UInt:
        for (const U256& v : d.valueDomain)
            out.push_back(havoc_choice(site, Value::uintv(v)));
        break;
    case TypeKind::Int:
        for (const U256& v : d.valueDomain)
            out.push_back(havoc_choice(site, Value::intv(v)));
        break;
    case TypeKind::Bool:
        out.push_back(havoc_choice(site, Value::boolean(false)));
        out.push_back(havoc_choice(site, Value::boolean(true)));
        break;
    case TypeKind::Address:
    case TypeKind::Contract:
        for (const Address& a : d.universe)
            out.push_back(havoc_choice(site, Value::address(a)));
        break;
    case TypeKind::Enum: {
        const EnumDecl* e = idx.enumDecl(t->name);
        for (size_t i = 0; i < e->values.size(); ++i)
            out.push_back(havoc_choice(site, Value::enumv(t->name, (uint32_t)i)));
        break;
    }
    default:
        throw InternalError("no havoc domain for " + type_to_string(t));
    }
    return out;
}

Value pick_scalar(ChoiceProvider& prov, const std::string& site, const TypePtr& t,
                  const Domains& d, const ProgramIndex& idx)
{
    std::vector<Choice> options = scalar_options(site, t, d, idx);
    return options[prov.choose(site, options)].value;
}

// ---------------------------------------------------------------------------
// Havoc of basic values (cell types and references stay fixed)

void havoc_cell(RefMap& m, RefId r, const std::string& site, ChoiceProvider& prov,
                const Domains& d, const ProgramIndex& idx)
{
    RefCell& cell = m.at(r);
    if (!cell.type)
        return;
    const TypePtr& t = cell.type;
    switch (t->kind) {
    case TypeKind::Struct: {
        const StructDecl* sd = idx.structDecl(t->name);
        for (const auto& mem : sd->members) {
            for (auto& [n, v] : cell.value.members) {
                if (n != mem.name)
                    continue;
                if (mem.type->isReference()) {
                    if (v.kind == Value::Kind::Ref && v.ref != 0)
                        havoc_cell(m, v.ref, site + "." + n, prov, d, idx);
                } else {
                    v = pick_scalar(prov, site + "." + n, mem.type, d, idx);
                }
            }
        }
        // re-fetch: picks may have materialised cells and moved nothing,
        // but the map node itself is stable
        return;
    }
    case TypeKind::Array: {
        if (!t->fixedSize) {
            std::vector<Choice> lens;
            for (const U256& v : d.valueDomain)
                lens.push_back(havoc_choice(site + ".length", Value::uintv(v)));
            cell.value.bits = lens[prov.choose(site + ".length", lens)].value.bits;
        }
        for (auto& [k, v] : m.at(r).value.overrides) {
            std::string s2 = site + "[" + u256_to_string(k.bits) + "]";
            if (t->elem->isReference()) {
                if (v.kind == Value::Kind::Ref && v.ref != 0)
                    havoc_cell(m, v.ref, s2, prov, d, idx);
            } else {
                v = pick_scalar(prov, s2, t->elem, d, idx);
            }
        }
        return;
    }
    case TypeKind::Mapping: {
        for (auto& [k, v] : m.at(r).value.overrides) {
            std::string s2 = site + "[" + u256_to_string(k.bits) + "]";
            if (t->range->isReference()) {
                if (v.kind == Value::Kind::Ref && v.ref != 0)
                    havoc_cell(m, v.ref, s2, prov, d, idx);
            } else {
                v = pick_scalar(prov, s2, t->range, d, idx);
            }
        }
        return;
    }
    default:
        cell.value = pick_scalar(prov, site, t, d, idx);
        return;
    }
}

void havoc_address(ChainState& chain, const Address& a, bool storageToo, ChoiceProvider& prov,
                   const Domains& d, const ProgramIndex& idx)
{
    if (chain.kindOf(a).k == AddressKind::Unused)
        return;
    std::string base = "s[" + u256_to_string(a) + "]";
    std::vector<Choice> bals;
    for (const U256& v : d.valueDomain)
        bals.push_back(havoc_choice(base + ".balance", Value::uintv(v)));
    chain.at(a).balance = bals[prov.choose(base + ".balance", bals)].value.bits;
    if (storageToo && chain.kindOf(a).k == AddressKind::Contract) {
        sem::AddressCell& cell = chain.at(a);
        for (const auto& [name, ref] : cell.members)
            havoc_cell(cell.storage, ref, base + "." + name, prov, d, idx);
    }
}

// mapping entries for every key in the configured domains, so the function
// harness has concrete slots to havoc
void materialize_domain_entries(RefMap& m, RefId r, const Domains& d, const ProgramIndex& idx)
{
    RefCell& cell = m.at(r);
    if (!cell.type)
        return;
    const TypePtr& t = cell.type;
    if (t->kind == TypeKind::Mapping) {
        std::vector<Choice> keys = scalar_options("", t->domain, d, idx);
        for (const Choice& kc : keys) {
            ScalarKey key = sem::scalar_key(kc.value);
            if (t->range->isReference()) {
                Value v = sem::map_read(m, m.at(r).value, key, t->range, idx);
                materialize_domain_entries(m, v.ref, d, idx);
            } else if (!m.at(r).value.findOverride(key)) {
                m.at(r).value.setOverride(key, sem::default_scalar(t->range));
            }
        }
        return;
    }
    if (t->kind == TypeKind::Struct) {
        for (auto& [n, v] : m.at(r).value.members)
            if (v.kind == Value::Kind::Ref && v.ref != 0)
                materialize_domain_entries(m, v.ref, d, idx);
        return;
    }
    if (t->kind == TypeKind::Array) {
        for (auto& [k, v] : m.at(r).value.overrides)
            if (v.kind == Value::Kind::Ref && v.ref != 0)
                materialize_domain_entries(m, v.ref, d, idx);
        return;
    }
}

// ---------------------------------------------------------------------------
// Call stubs (the harness semantics of the Call construct)

ExprPtr literal_expr(const Value& v, const TypePtr& t)
{
    ExprPtr e;
    switch (v.kind) {
    case Value::Kind::Bool:
        e = Expr::boolean(v.bits != 0);
        break;
    case Value::Kind::Enum:
        e = Expr::member(Expr::ident(v.typeName), "");
        e->memberKind = MemberKind::EnumValue;
        e->enumValueIndex = (int)v.enumIndex;
        break;
    default:
        e = Expr::num(v.bits);
        break;
    }
    e->type = t;
    return e;
}

bool all_params_scalar(const FunctionDeclaration& f)
{
    for (const auto& p : f.inParams)
        if (p.variable.type->isReference())
            return false;
    return true;
}

int stub_depth(const ExecState& st)
{
    int n = 0;
    for (const auto& fr : st.stack)
        if (fr.link == Frame::Link::CallStub)
            ++n;
    return n;
}

// Contract harness: an unknown callee can run any short sequence of
// interface functions on the main contract before returning true.
class ContractHarnessStub : public sem::CallHandler {
public:
    const HarnessConfig* cfg = nullptr;
    const Domains* domains = nullptr;
    Address main;
    std::string contract;

    void onCall(Interpreter& interp, ExecState& st, const Stmt& s) override
    {
        Frame& fr = st.top();
        Address dest = interp.eval(st, s.address).bits;
        U256 value = interp.eval(st, s.value).bits;
        std::string site = (fr.func ? fr.func->name : std::string("<stub>")) + ":" + s.loc.str();
        bool canPay = st.chain.balanceOf(fr.self) >= value;
        std::vector<Choice> outcomes;
        if (canPay)
            outcomes.push_back({Choice::Kind::CallOutcome, site, Value::boolean(true), {}});
        outcomes.push_back({Choice::Kind::CallOutcome, site, Value::boolean(false), {}});
        size_t pick = interp.provider().choose(site, outcomes);
        if (!outcomes[pick].value.isTrue()) {
            interp.update(st, {s.lhs}, {Value::boolean(false)});
            return;
        }
        auto preChain = std::make_shared<const ChainState>(st.chain);
        auto preMemory = std::make_shared<const RefMap>(st.memory);
        auto preLocals = std::make_shared<const sem::LocalContext>(fr.locals);
        sem::set_balance(st.chain, fr.self, dest, value);

        // re-entry sequence, shortest first; bounded by the remaining depth
        int avail = cfg->callDepth - stub_depth(st);
        std::vector<const FunctionDeclaration*> fns;
        for (const auto* f : interp.index().interfaceFunctions(contract))
            if (all_params_scalar(*f))
                fns.push_back(f);
        StmtList seq;
        for (int k = 0; k < avail; ++k) {
            std::vector<Choice> slots;
            slots.push_back({Choice::Kind::CallTarget, site, {}, "(end)"});
            for (const auto* f : fns)
                slots.push_back({Choice::Kind::CallTarget, site, {}, f->name});
            size_t si = interp.provider().choose(site + "/reentry" + std::to_string(k), slots);
            if (si == 0)
                break;
            const FunctionDeclaration* f = fns[si - 1];
            U256 rv = 0;
            if (f->isPayable) {
                std::vector<Choice> vals;
                for (const U256& v : domains->valueDomain)
                    vals.push_back(havoc_choice(site + "/reentry-value", Value::uintv(v)));
                rv = vals[interp.provider().choose(site + "/reentry-value", vals)].value.bits;
            }
            Stmt call;
            call.kind = Stmt::Kind::ContractCall;
            call.type = type_contract(contract);
            call.funcName = f->name;
            call.target = literal_expr(Value::address(main), type_contract(contract));
            call.value = literal_expr(Value::uintv(rv), type_uint());
            for (size_t i = 0; i < f->inParams.size(); ++i) {
                const TypePtr& pt = f->inParams[i].variable.type;
                Value av = pick_scalar(interp.provider(),
                                       site + "/reentry-arg" + std::to_string(i), pt, *domains,
                                       interp.index());
                call.args.push_back(literal_expr(av, pt));
            }
            seq.push_back(make_stmt(std::move(call)));
        }
        Frame stub;
        stub.func = nullptr;
        stub.self = dest;
        stub.link = Frame::Link::CallStub;
        stub.linkLhs = {s.lhs};
        stub.preChain = preChain;
        stub.preMemory = preMemory;
        stub.preLocals = preLocals;
        for (auto it = seq.rbegin(); it != seq.rend(); ++it)
            stub.code.push_back(*it);
        st.stack.push_back(std::move(stub));
    }
};

// Function harness: an unknown callee arbitrarily reshuffles balances and
// basic storage of every address.
class FunctionHarnessStub : public sem::CallHandler {
public:
    const Domains* domains = nullptr;

    void onCall(Interpreter& interp, ExecState& st, const Stmt& s) override
    {
        Frame& fr = st.top();
        Address dest = interp.eval(st, s.address).bits;
        U256 value = interp.eval(st, s.value).bits;
        std::string site = (fr.func ? fr.func->name : std::string("<stub>")) + ":" + s.loc.str();
        bool canPay = st.chain.balanceOf(fr.self) >= value;
        std::vector<Choice> outcomes;
        if (canPay)
            outcomes.push_back({Choice::Kind::CallOutcome, site, Value::boolean(true), {}});
        outcomes.push_back({Choice::Kind::CallOutcome, site, Value::boolean(false), {}});
        size_t pick = interp.provider().choose(site, outcomes);
        if (!outcomes[pick].value.isTrue()) {
            interp.update(st, {s.lhs}, {Value::boolean(false)});
            return;
        }
        sem::set_balance(st.chain, fr.self, dest, value);
        for (const Address& a : domains->universe)
            havoc_address(st.chain, a, /*storageToo=*/true, interp.provider(), *domains,
                          interp.index());
        interp.update(st, {s.lhs}, {Value::boolean(true)});
    }
};

// ---------------------------------------------------------------------------
// The search itself

struct CallResult {
    sem::TransactionResult::Kind kind;
    ChainState chain;
    std::string errorSite;
    std::vector<std::pair<std::string, Value>> cexLog;
    Address sender;
    U256 value;
    std::vector<Value> args;
};

struct Search {
    const Program& program;
    const HarnessConfig& cfg;
    Domains domains;
    Interpreter interp;
    const Contract* contract = nullptr;
    Address main;
    std::vector<const FunctionDeclaration*> interfaceFns;

    // keyed on the full canonical state: a hash collision must never prune
    // a reachable error
    std::map<std::string, int> memo;
    Trace trace;
    std::vector<TraceEntry> pending;
    bool found = false;
    bool budgetHit = false;

    Search(const Program& p, const HarnessConfig& c, sem::ChoiceProvider& boot)
        : program(p)
        , cfg(c)
        , domains(make_domains(p, c))
        , interp(p, makeInterpConfig(c), boot)
    {
        contract = interp.index().contract(cfg.contract);
        if (!contract)
            throw FrontendError("UnknownIdentifier", {}, "contract " + cfg.contract);
        main = domains.universe.front();
        interfaceFns = interp.index().interfaceFunctions(cfg.contract);
    }

    static sem::InterpreterConfig makeInterpConfig(const HarnessConfig& c)
    {
        sem::InterpreterConfig ic;
        for (int i = 1; i <= c.addressCount; ++i)
            ic.addressUniverse.push_back(Address(i));
        ic.stepBudget = c.stepBudget;
        return ic;
    }

    ChainState initialChain() const
    {
        ChainState chain;
        chain.time = 0;
        for (const Address& a : domains.universe)
            if (a != main)
                chain.at(a).type = AddressKind::simple();
        return chain;
    }

    // One harness call, fully determined by the provider's decisions.
    CallResult runCall(const ChainState& chain, const FunctionDeclaration& f, bool isDeploy,
                       bool havocMainStorage, ChoiceProvider& prov)
    {
        CallResult res;
        const ProgramIndex& idx = interp.index();
        // top-level calls are transactions: their issuer is an externally
        // owned address, never the contract under test (re-entrant calls can
        // still carry the contract as msg.sender)
        std::vector<Choice> senders;
        for (const Address& a : domains.universe)
            if (a != main)
                senders.push_back(havoc_choice("msg.sender", Value::address(a)));
        res.sender = senders[prov.choose("msg.sender", senders)].value.bits;
        res.value = 0;
        if (f.isPayable) {
            std::vector<Choice> vals;
            for (const U256& v : domains.valueDomain)
                vals.push_back(havoc_choice("msg.value", Value::uintv(v)));
            res.value = vals[prov.choose("msg.value", vals)].value.bits;
        }
        for (size_t i = 0; i < f.inParams.size(); ++i) {
            const TypePtr& pt = f.inParams[i].variable.type;
            if (pt->isReference())
                res.args.push_back(Value::reference(0)); // fresh default tree
            else
                res.args.push_back(
                    pick_scalar(prov, "arg" + std::to_string(i), pt, domains, idx));
        }
        ChainState work = chain;
        if (domains.readsTime) {
            std::vector<Choice> times;
            for (const U256& v : domains.timeDomain)
                times.push_back(havoc_choice("b.time", Value::uintv(v)));
            work.time = times[prov.choose("b.time", times)].value.bits;
        }
        Address origin = res.sender;
        if (domains.readsOrigin) {
            std::vector<Choice> origins;
            for (const Address& a : domains.universe)
                if (a != main)
                    origins.push_back(havoc_choice("tx.origin", Value::address(a)));
            origin = origins[prov.choose("tx.origin", origins)].value.bits;
        }
        // environment havoc: balances the program can observe, plus foreign
        // contract storage; unobservable balances are havocked at the call
        // where they become the sender's
        if (domains.readsBalance) {
            for (const Address& a : domains.universe)
                if (a != main)
                    havoc_address(work, a, true, prov, domains, idx);
        } else {
            for (const Address& a : domains.universe)
                if (a != main && work.kindOf(a).k == AddressKind::Contract)
                    havoc_address(work, a, true, prov, domains, idx);
            if (res.sender != main && work.kindOf(res.sender).k == AddressKind::Simple)
                havoc_address(work, res.sender, false, prov, domains, idx);
        }
        if (havocMainStorage) {
            // function harness: the contract itself starts in an arbitrary
            // type-correct state
            std::vector<Choice> bals;
            for (const U256& v : domains.valueDomain)
                bals.push_back(havoc_choice("s[main].balance", Value::uintv(v)));
            work.at(main).balance = bals[prov.choose("s[main].balance", bals)].value.bits;
            sem::AddressCell& mc = work.at(main);
            for (const auto& [name, ref] : mc.members)
                havoc_cell(mc.storage, ref, "s[main]." + name, prov, domains, idx);
        }
        if (isDeploy)
            sem::init_contract(work, main, cfg.contract, idx);
        if (!sem::set_balance(work, res.sender, main, res.value)) {
            res.kind = sem::TransactionResult::Kind::Invalid;
            return res;
        }
        ExecState st = interp.make_exec_state(std::move(work), origin, main, f, res.sender,
                                              res.value, res.args);
        try {
            interp.run(st);
        } catch (const sem::BudgetExhaustedError&) {
            res.kind = sem::TransactionResult::Kind::BudgetExhausted;
            return res;
        }
        res.cexLog = st.cexLog;
        switch (st.status) {
        case ExecState::Status::Complete:
            res.kind = sem::TransactionResult::Kind::Committed;
            res.chain = std::move(st.chain);
            return res;
        case ExecState::Status::Fail:
            res.kind = sem::TransactionResult::Kind::Invalid;
            return res;
        case ExecState::Status::Error:
            res.kind = sem::TransactionResult::Kind::Error;
            res.errorSite = st.errorSite;
            res.chain = std::move(st.chain);
            return res;
        default:
            throw InternalError("non-terminal state after run");
        }
    }

    TraceEntry makeEntry(const FunctionDeclaration& f, bool isDeploy, const CallResult& res,
                         const std::vector<Choice>& choices)
    {
        TraceEntry e;
        if (isDeploy)
            e.tx = sem::Transaction::createContract(res.sender, cfg.contract, res.value, res.args);
        else
            e.tx = sem::Transaction::executeContract(res.sender, main, cfg.contract, f.name,
                                                     res.value, res.args);
        e.choices = choices;
        e.cexprints = res.cexLog;
        return e;
    }

    void finishTrace(const std::string& site)
    {
        found = true;
        trace.verdict = Trace::Verdict::ErrorFound;
        trace.errorSite = site;
        trace.entries = pending;
    }

    bool dfs(const ChainState& chain, int remaining)
    {
        std::string h = sem::canonical_chain(chain);
        auto it = memo.find(h);
        if (it != memo.end() && it->second >= remaining) {
            ++trace.stats.pruned;
            return false;
        }
        memo[std::move(h)] = remaining;
        if (remaining == 0)
            return false;
        for (const FunctionDeclaration* f : interfaceFns) {
            bool stop = enumerate_paths(
                [&](TrailProvider& prov) {
                    interp.setProvider(prov);
                    return runCall(chain, *f, false, false, prov);
                },
                [&](CallResult& res, const std::vector<Choice>& choices) {
                    ++trace.stats.statesExplored;
                    switch (res.kind) {
                    case sem::TransactionResult::Kind::Error:
                        pending.push_back(makeEntry(*f, false, res, choices));
                        finishTrace(res.errorSite);
                        return true;
                    case sem::TransactionResult::Kind::Committed: {
                        pending.push_back(makeEntry(*f, false, res, choices));
                        bool s = dfs(res.chain, remaining - 1);
                        if (!s)
                            pending.pop_back();
                        return s;
                    }
                    case sem::TransactionResult::Kind::BudgetExhausted:
                        budgetHit = true;
                        return false;
                    default:
                        ++trace.stats.pruned;
                        return false;
                    }
                });
            if (stop)
                return true;
        }
        return false;
    }

    void runContractHarness()
    {
        const FunctionDeclaration* ctor = interp.index().constructorOf(cfg.contract);
        if (!ctor)
            throw InternalError("missing constructor (program not explicated)");
        ContractHarnessStub stub;
        stub.cfg = &cfg;
        stub.domains = &domains;
        stub.main = main;
        stub.contract = cfg.contract;
        interp.setCallHandler(&stub);
        ChainState init = initialChain();
        enumerate_paths(
            [&](TrailProvider& prov) {
                interp.setProvider(prov);
                return runCall(init, *ctor, true, false, prov);
            },
            [&](CallResult& res, const std::vector<Choice>& choices) {
                ++trace.stats.statesExplored;
                switch (res.kind) {
                case sem::TransactionResult::Kind::Error:
                    pending.push_back(makeEntry(*ctor, true, res, choices));
                    finishTrace(res.errorSite);
                    return true;
                case sem::TransactionResult::Kind::Committed: {
                    pending.push_back(makeEntry(*ctor, true, res, choices));
                    bool s = dfs(res.chain, cfg.txBound);
                    if (!s)
                        pending.pop_back();
                    return s;
                }
                case sem::TransactionResult::Kind::BudgetExhausted:
                    budgetHit = true;
                    return false;
                default:
                    ++trace.stats.pruned;
                    return false;
                }
            });
    }

    void runFunctionHarness()
    {
        const FunctionDeclaration* f = interp.index().function(cfg.contract, cfg.function);
        if (!f || f->isConstructor || f->visibility != Visibility::Public)
            throw FrontendError("UnknownIdentifier", {},
                                "no interface function " + cfg.function + " in " + cfg.contract);
        FunctionHarnessStub stub;
        stub.domains = &domains;
        interp.setCallHandler(&stub);
        ChainState init = initialChain();
        sem::init_contract(init, main, cfg.contract, interp.index());
        sem::AddressCell& mc = init.at(main);
        for (const auto& [name, ref] : mc.members)
            materialize_domain_entries(mc.storage, ref, domains, interp.index());
        enumerate_paths(
            [&](TrailProvider& prov) {
                interp.setProvider(prov);
                return runCall(init, *f, false, true, prov);
            },
            [&](CallResult& res, const std::vector<Choice>& choices) {
                ++trace.stats.statesExplored;
                switch (res.kind) {
                case sem::TransactionResult::Kind::Error:
                    pending.push_back(makeEntry(*f, false, res, choices));
                    finishTrace(res.errorSite);
                    return true;
                case sem::TransactionResult::Kind::BudgetExhausted:
                    budgetHit = true;
                    return false;
                default:
                    return false;
                }
            });
    }
};

} // namespace

Trace run_harness(const Program& solidProgram, const HarnessConfig& cfg)
{
    auto start = std::chrono::steady_clock::now();
    sem::DefaultChoiceProvider boot;
    Search search(solidProgram, cfg, boot);
    if (cfg.kind == HarnessConfig::Kind::Contract)
        search.runContractHarness();
    else
        search.runFunctionHarness();
    Trace t = std::move(search.trace);
    if (search.found)
        t.verdict = Trace::Verdict::ErrorFound;
    else if (search.budgetHit)
        t.verdict = Trace::Verdict::BudgetExhausted;
    else
        t.verdict = Trace::Verdict::NoViolationWithinBound;
    t.stats.elapsedMs = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    if (t.verdict == Trace::Verdict::ErrorFound && !replay(solidProgram, cfg, t))
        throw sem::ReplayDivergence("counterexample did not replay to the reported error");
    return t;
}

bool replay(const Program& solidProgram, const HarnessConfig& cfg, const Trace& trace)
{
    if (trace.verdict != Trace::Verdict::ErrorFound || trace.entries.empty())
        return false;
    sem::DefaultChoiceProvider boot;
    Search search(solidProgram, cfg, boot);
    ContractHarnessStub cstub;
    FunctionHarnessStub fstub;
    if (cfg.kind == HarnessConfig::Kind::Contract) {
        cstub.cfg = &cfg;
        cstub.domains = &search.domains;
        cstub.main = search.main;
        cstub.contract = cfg.contract;
        search.interp.setCallHandler(&cstub);
    } else {
        fstub.domains = &search.domains;
        search.interp.setCallHandler(&fstub);
    }
    ChainState chain = search.initialChain();
    if (cfg.kind == HarnessConfig::Kind::Function) {
        sem::init_contract(chain, search.main, cfg.contract, search.interp.index());
        sem::AddressCell& mc = chain.at(search.main);
        for (const auto& [name, ref] : mc.members)
            materialize_domain_entries(mc.storage, ref, search.domains, search.interp.index());
    }
    for (size_t i = 0; i < trace.entries.size(); ++i) {
        const TraceEntry& e = trace.entries[i];
        bool isDeploy = cfg.kind == HarnessConfig::Kind::Contract && i == 0;
        const FunctionDeclaration* f = isDeploy
            ? search.interp.index().constructorOf(cfg.contract)
            : search.interp.index().function(cfg.contract, e.tx.func.empty() ? cfg.function
                                                                             : e.tx.func);
        if (!f)
            return false;
        sem::ScriptedChoiceProvider prov(e.choices);
        search.interp.setProvider(prov);
        bool havocMain = cfg.kind == HarnessConfig::Kind::Function;
        CallResult res = search.runCall(chain, *f, isDeploy, havocMain, prov);
        bool last = i + 1 == trace.entries.size();
        if (last)
            return res.kind == sem::TransactionResult::Kind::Error
                && res.errorSite == trace.errorSite;
        if (res.kind != sem::TransactionResult::Kind::Committed)
            return false;
        chain = std::move(res.chain);
    }
    return false;
}

nlohmann::json trace_to_json(const Trace& t)
{
    using nlohmann::json;
    json out;
    switch (t.verdict) {
    case Trace::Verdict::ErrorFound: out["verdict"] = "error-found"; break;
    case Trace::Verdict::NoViolationWithinBound: out["verdict"] = "no-violation-within-bound"; break;
    case Trace::Verdict::BudgetExhausted: out["verdict"] = "budget-exhausted"; break;
    }
    if (!t.errorSite.empty())
        out["errorSite"] = t.errorSite;
    json entries = json::array();
    for (const auto& e : t.entries) {
        json je;
        je["tx"] = sem::transaction_to_json(e.tx);
        json cs = json::array();
        for (const auto& c : e.choices)
            cs.push_back(sem::choice_to_json(c));
        je["choices"] = cs;
        json cex = json::array();
        for (const auto& [site, v] : e.cexprints)
            cex.push_back(json{{"site", site}, {"value", sem::value_to_json(v)}});
        je["cexprints"] = cex;
        entries.push_back(je);
    }
    out["trace"] = entries;
    out["stats"] = json{{"statesExplored", t.stats.statesExplored},
                        {"pruned", t.stats.pruned},
                        {"elapsedMs", t.stats.elapsedMs}};
    return out;
}

std::string trace_to_text(const Trace& t)
{
    std::ostringstream os;
    switch (t.verdict) {
    case Trace::Verdict::ErrorFound:
        os << "verdict: assertion violation at " << t.errorSite << "\n";
        break;
    case Trace::Verdict::NoViolationWithinBound:
        os << "verdict: no violation within bound\n";
        break;
    case Trace::Verdict::BudgetExhausted:
        os << "verdict: statement budget exhausted before the bound\n";
        break;
    }
    for (size_t i = 0; i < t.entries.size(); ++i) {
        const TraceEntry& e = t.entries[i];
        os << "#" << i << " ";
        if (e.tx.kind == sem::Transaction::Kind::CreateContract)
            os << "deploy " << e.tx.contractType;
        else
            os << "call " << e.tx.func;
        os << "(";
        for (size_t a = 0; a < e.tx.args.size(); ++a) {
            if (a)
                os << ", ";
            os << sem::value_to_json(e.tx.args[a]).dump();
        }
        os << ")";
        os << " from " << u256_to_string(e.tx.src) << " value " << u256_to_string(e.tx.value);
        os << " [";
        bool firstc = true;
        for (const auto& c : e.choices) {
            if (c.kind == Choice::Kind::HavocValue
                && (c.site == "msg.sender" || c.site == "msg.value" || c.site.rfind("arg", 0) == 0))
                continue; // already shown in the call summary
            if (!firstc)
                os << ", ";
            firstc = false;
            os << c.site << "=";
            if (!c.text.empty())
                os << c.text;
            else
                os << sem::value_to_json(c.value).dump();
        }
        os << "] => " << (i + 1 == t.entries.size() ? "error" : "committed") << "\n";
        for (const auto& [site, v] : e.cexprints)
            os << "    " << site << ": " << sem::value_to_json(v).dump() << "\n";
    }
    os << "states explored: " << t.stats.statesExplored << ", pruned: " << t.stats.pruned
       << ", elapsed: " << t.stats.elapsedMs << " ms\n";
    return os.str();
}

int verdict_exit_code(Trace::Verdict v)
{
    switch (v) {
    case Trace::Verdict::NoViolationWithinBound: return 0;
    case Trace::Verdict::ErrorFound: return 1;
    case Trace::Verdict::BudgetExhausted: return 2;
    }
    return 3;
}

} // namespace solidbmc::explorer
