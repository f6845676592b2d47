// solidbmc: bounded model checking toolchain for a Solidity subset
// Copyright 2026 The solidbmc Authors.
// SPDX-License-Identifier: Apache-2.0
#include "semantics/interpreter.hpp"

#include "frontend/typecheck.hpp"

#include <algorithm>

namespace solidbmc::sem {

using namespace ast;

// ---------------------------------------------------------------------------
// Transactions

Transaction Transaction::createAddress(const U256& value)
{
    Transaction t;
    t.kind = Kind::CreateAddress;
    t.value = value;
    return t;
}
Transaction Transaction::currencyTransfer(const Address& src, const Address& dest, const U256& value)
{
    Transaction t;
    t.kind = Kind::CurrencyTransfer;
    t.src = src;
    t.dest = dest;
    t.value = value;
    return t;
}
Transaction Transaction::createContract(const Address& src, std::string type, const U256& value,
                                        std::vector<Value> args)
{
    Transaction t;
    t.kind = Kind::CreateContract;
    t.src = src;
    t.contractType = std::move(type);
    t.value = value;
    t.args = std::move(args);
    return t;
}
Transaction Transaction::executeContract(const Address& src, const Address& addr, std::string type,
                                         std::string func, const U256& value,
                                         std::vector<Value> args)
{
    Transaction t;
    t.kind = Kind::ExecuteContract;
    t.src = src;
    t.dest = addr;
    t.contractType = std::move(type);
    t.func = std::move(func);
    t.value = value;
    t.args = std::move(args);
    return t;
}
Transaction Transaction::mintBlock(const U256& newTime)
{
    Transaction t;
    t.kind = Kind::MintBlock;
    t.newTime = newTime;
    return t;
}

nlohmann::json transaction_to_json(const Transaction& t)
{
    using nlohmann::json;
    json j;
    switch (t.kind) {
    case Transaction::Kind::CreateAddress:
        j["kind"] = "create-address";
        j["value"] = u256_to_string(t.value);
        break;
    case Transaction::Kind::CurrencyTransfer:
        j["kind"] = "currency-transfer";
        j["src"] = u256_to_string(t.src);
        j["dest"] = u256_to_string(t.dest);
        j["value"] = u256_to_string(t.value);
        break;
    case Transaction::Kind::CreateContract:
        j["kind"] = "create-contract";
        j["src"] = u256_to_string(t.src);
        j["type"] = t.contractType;
        j["value"] = u256_to_string(t.value);
        break;
    case Transaction::Kind::ExecuteContract:
        j["kind"] = "execute-contract";
        j["src"] = u256_to_string(t.src);
        j["address"] = u256_to_string(t.dest);
        j["type"] = t.contractType;
        j["function"] = t.func;
        j["value"] = u256_to_string(t.value);
        break;
    case Transaction::Kind::MintBlock:
        j["kind"] = "mint-block";
        j["time"] = u256_to_string(t.newTime);
        break;
    }
    if (!t.args.empty()) {
        nlohmann::json a = nlohmann::json::array();
        for (const auto& v : t.args)
            a.push_back(value_to_json(v));
        j["args"] = a;
    }
    return j;
}

// ---------------------------------------------------------------------------
// Choices

bool Choice::sameAs(const Choice& o) const
{
    return kind == o.kind && value == o.value && text == o.text;
}

const char* choice_kind_name(Choice::Kind k)
{
    switch (k) {
    case Choice::Kind::FreshAddress: return "fresh-address";
    case Choice::Kind::TransferOutcome: return "transfer-outcome";
    case Choice::Kind::SendOutcome: return "send-outcome";
    case Choice::Kind::CallTarget: return "call-target";
    case Choice::Kind::CallOutcome: return "call-outcome";
    case Choice::Kind::HavocValue: return "havoc";
    }
    return "?";
}

nlohmann::json choice_to_json(const Choice& c)
{
    nlohmann::json j;
    j["kind"] = choice_kind_name(c.kind);
    j["site"] = c.site;
    if (!c.text.empty())
        j["target"] = c.text;
    else
        j["value"] = value_to_json(c.value);
    return j;
}

Value ChoiceProvider::havocScalar(const std::string&, const TypePtr& type)
{
    return default_scalar(type);
}

size_t ScriptedChoiceProvider::choose(const std::string& site, const std::vector<Choice>& options)
{
    if (next_ >= pinned_.size())
        return 0; // unpinned tail: deterministic first option
    const Choice& want = pinned_[next_++];
    for (size_t i = 0; i < options.size(); ++i)
        if (options[i].sameAs(want))
            return i;
    throw ReplayDivergence("pinned choice at " + site + " is not available");
}

Value ScriptedChoiceProvider::havocScalar(const std::string& site, const TypePtr& type)
{
    if (next_ >= pinned_.size())
        return default_scalar(type);
    const Choice& want = pinned_[next_];
    if (want.kind == Choice::Kind::HavocValue) {
        ++next_;
        return want.value;
    }
    (void)site;
    return default_scalar(type);
}

size_t RecordingChoiceProvider::choose(const std::string& site, const std::vector<Choice>& options)
{
    size_t i = inner_.choose(site, options);
    if (i >= options.size())
        throw InternalError("choice index out of range at " + site);
    recorded_.push_back(options[i]);
    return i;
}

Value RecordingChoiceProvider::havocScalar(const std::string& site, const TypePtr& type)
{
    Value v = inner_.havocScalar(site, type);
    Choice c;
    c.kind = Choice::Kind::HavocValue;
    c.site = site;
    c.value = v;
    recorded_.push_back(c);
    return v;
}

// ---------------------------------------------------------------------------
// Interpreter

namespace {

// location of a cell: the per-transaction memory or one address's storage
struct CellRef {
    bool inMemory = false;
    Address owner;
    RefId ref = 0;
};

std::string loc_site(const Frame& f, const Stmt& s)
{
    std::string fn = f.func ? f.func->name : "<stub>";
    return fn + ":" + s.loc.str();
}

void push_reversed(std::vector<StmtPtr>& code, const StmtList& body)
{
    for (auto it = body.rbegin(); it != body.rend(); ++it)
        code.push_back(*it);
}

} // namespace

Interpreter::Interpreter(const Program& program, const InterpreterConfig& config,
                         ChoiceProvider& provider)
    : program_(&program)
    , index_(program)
    , config_(config)
    , provider_(&provider)
{
}

std::optional<Address> Interpreter::lowest_unused(const ChainState& chain) const
{
    for (const Address& a : config_.addressUniverse)
        if (chain.kindOf(a).k == AddressKind::Unused)
            return a;
    return std::nullopt;
}

LocalContext Interpreter::init_locals(const FunctionDeclaration& f, const Address& self,
                                      const Address& sender, const U256& value,
                                      const std::vector<Value>& args)
{
    if (args.size() != f.inParams.size())
        throw InternalError("ArityMismatch calling " + f.name + ": expected "
                            + std::to_string(f.inParams.size()) + " args, got "
                            + std::to_string(args.size()));
    LocalContext l;
    l["this"] = Value::address(self);
    l["$msg.sender"] = Value::address(sender);
    l["$msg.value"] = Value::uintv(value);
    for (size_t i = 0; i < args.size(); ++i)
        l[f.inParams[i].variable.name] = args[i];
    // out-params and locals get fixed placeholders; the explicator's
    // initial assignments overwrite them before any read
    auto placeholder = [](const TypePtr& t) {
        return t->isReference() ? Value::reference(0) : default_scalar(t);
    };
    for (const auto& p : f.outParams)
        l[p.variable.name] = placeholder(p.variable.type);
    for (const auto& d : frontend::collect_locals(f))
        l[d.variable.name] = placeholder(d.variable.type);
    return l;
}

ExecState Interpreter::make_exec_state(ChainState chain, const Address& origin,
                                       const Address& self, const FunctionDeclaration& f,
                                       const Address& sender, const U256& value,
                                       const std::vector<Value>& args)
{
    ExecState st;
    st.chain = std::move(chain);
    st.txOrigin = origin;
    // reference-typed arguments passed as null get fresh default trees
    std::vector<Value> fixedArgs = args;
    for (size_t i = 0; i < fixedArgs.size() && i < f.inParams.size(); ++i) {
        const TypePtr& pt = f.inParams[i].variable.type;
        if (pt->isReference() && fixedArgs[i].kind == Value::Kind::Ref && fixedArgs[i].ref == 0)
            fixedArgs[i] = Value::reference(alloc_tree(st.memory, pt, index_));
    }
    Frame fr;
    fr.func = &f;
    fr.self = self;
    fr.locals = init_locals(f, self, sender, value, fixedArgs);
    push_reversed(fr.code, f.body);
    fr.link = Frame::Link::Top;
    st.stack.push_back(std::move(fr));
    return st;
}

void Interpreter::push_contract_call(ExecState& st, const Address& callee,
                                     const FunctionDeclaration& f, const U256& value,
                                     const std::vector<Value>& args, Frame::Link link,
                                     std::vector<ExprPtr> linkLhs)
{
    Frame fr;
    fr.func = &f;
    fr.self = callee;
    fr.locals = init_locals(f, callee, st.top().self, value, args);
    push_reversed(fr.code, f.body);
    fr.link = link;
    fr.linkLhs = std::move(linkLhs);
    st.stack.push_back(std::move(fr));
}

// ---------------------------------------------------------------------------
// Expression evaluation

namespace {

U256 wrap_binary_uint(const std::string& op, const U256& a, const U256& b)
{
    if (op == "+") return a + b;
    if (op == "-") return a - b;
    if (op == "*") return a * b;
    if (op == "/") {
        if (b == 0)
            throw InternalError("division by zero reached the evaluator");
        return a / b;
    }
    if (op == "%") {
        if (b == 0)
            throw InternalError("modulo by zero reached the evaluator");
        return a % b;
    }
    throw InternalError("bad uint operator " + op);
}

U256 wrap_binary_int(const std::string& op, const U256& a, const U256& b)
{
    if (op == "+") return int_wrap(int_signed(a) + int_signed(b));
    if (op == "-") return int_wrap(int_signed(a) - int_signed(b));
    if (op == "*") return int_wrap(int_signed(a) * int_signed(b));
    if (op == "/") {
        if (b == 0)
            throw InternalError("division by zero reached the evaluator");
        return int_div(a, b);
    }
    if (op == "%") {
        if (b == 0)
            throw InternalError("modulo by zero reached the evaluator");
        return int_mod(a, b);
    }
    throw InternalError("bad int operator " + op);
}

} // namespace

// cell resolution for reference-typed expressions (materialises lazily)
namespace {

struct EvalCtx {
    Interpreter& interp;
    ExecState& st;

    Frame& frame() { return st.top(); }

    RefMap& mapOf(const CellRef& c)
    {
        return c.inMemory ? st.memory : st.chain.at(c.owner).storage;
    }

    RefCell& cellAt(const CellRef& c) { return mapOf(c).at(c.ref); }

    CellRef resolveCell(const ExprPtr& e)
    {
        switch (e->kind) {
        case Expr::Kind::Identifier: {
            if (e->idKind == IdKind::LocalVar) {
                const Value& v = localOf(e->name);
                if (v.kind != Value::Kind::Ref || v.ref == 0)
                    throw InternalError("UnallocatedRead: local " + e->name);
                CellRef c;
                c.inMemory = e->location == ast::LocationKind::MemoryPointer;
                c.owner = frame().self;
                c.ref = v.ref;
                return c;
            }
            if (e->idKind == IdKind::StateVar) {
                AddressCell& ac = st.chain.at(frame().self);
                auto it = ac.members.find(e->name);
                if (it == ac.members.end())
                    throw InternalError("UnallocatedRead: member " + e->name);
                return CellRef{false, frame().self, it->second};
            }
            break;
        }
        case Expr::Kind::Member: {
            if (e->memberKind == MemberKind::StructField) {
                CellRef base = resolveCell(e->base);
                RefCell& cell = cellAt(base);
                for (auto& [n, mv] : cell.value.members) {
                    if (n == e->name) {
                        if (mv.kind != Value::Kind::Ref || mv.ref == 0)
                            throw InternalError("UnallocatedRead: member " + e->name);
                        return CellRef{base.inMemory, base.owner, mv.ref};
                    }
                }
                throw InternalError("missing struct member " + e->name);
            }
            break;
        }
        case Expr::Kind::Index: {
            CellRef base = resolveCell(e->base);
            const TypePtr& bt = e->base->type;
            ScalarKey key;
            TypePtr elemType;
            if (bt->kind == TypeKind::Array) {
                Value idx = interp.eval(st, e->index);
                key = {0, idx.bits};
                elemType = bt->elem;
            } else {
                Value k = interp.eval(st, e->index);
                key = scalar_key(k);
                elemType = bt->range;
            }
            RefMap& m = mapOf(base);
            Value v = map_read(m, m.at(base.ref).value, key, elemType, interp.index());
            if (v.kind != Value::Kind::Ref || v.ref == 0)
                throw InternalError("UnallocatedRead: element");
            return CellRef{base.inMemory, base.owner, v.ref};
        }
        default:
            break;
        }
        throw InternalError("expression is not a reference");
    }

    const Value& localOf(const std::string& name)
    {
        auto it = frame().locals.find(name);
        if (it == frame().locals.end())
            throw InternalError("unbound local " + name);
        return it->second;
    }
};

struct LValueRef {
    enum class Kind { Local, CellWhole, CellMember, CellSlot, CellLength };
    Kind kind;
    std::string local;
    CellRef cell;
    std::string member;
    ScalarKey key;
};

LValueRef resolve_lvalue(EvalCtx& ctx, const ExprPtr& e)
{
    switch (e->kind) {
    case Expr::Kind::Identifier:
        if (e->idKind == IdKind::LocalVar)
            return {LValueRef::Kind::Local, e->name, {}, {}, {}};
        if (e->idKind == IdKind::StateVar) {
            AddressCell& ac = ctx.st.chain.at(ctx.frame().self);
            auto it = ac.members.find(e->name);
            if (it == ac.members.end())
                throw InternalError("UnallocatedRead: member " + e->name);
            return {LValueRef::Kind::CellWhole, {}, CellRef{false, ctx.frame().self, it->second},
                    {}, {}};
        }
        break;
    case Expr::Kind::Member:
        if (e->memberKind == MemberKind::StructField)
            return {LValueRef::Kind::CellMember, {}, ctx.resolveCell(e->base), e->name, {}};
        if (e->memberKind == MemberKind::ArrayLength)
            return {LValueRef::Kind::CellLength, {}, ctx.resolveCell(e->base), {}, {}};
        break;
    case Expr::Kind::Index: {
        CellRef base = ctx.resolveCell(e->base);
        const TypePtr& bt = e->base->type;
        ScalarKey key;
        if (bt->kind == TypeKind::Array)
            key = {0, ctx.interp.eval(ctx.st, e->index).bits};
        else
            key = scalar_key(ctx.interp.eval(ctx.st, e->index));
        return {LValueRef::Kind::CellSlot, {}, base, {}, key};
    }
    default:
        break;
    }
    throw InternalError("expression is not assignable");
}

void write_lvalue(EvalCtx& ctx, const LValueRef& lv, Value v)
{
    switch (lv.kind) {
    case LValueRef::Kind::Local:
        ctx.frame().locals[lv.local] = std::move(v);
        return;
    case LValueRef::Kind::CellWhole: {
        RefCell& cell = ctx.cellAt(lv.cell);
        if (cell.value.kind == Value::Kind::Record || cell.value.kind == Value::Kind::Mapping
            || cell.value.kind == Value::Kind::Array)
            throw InternalError("whole-composite write reached the evaluator (deep copy not explicated)");
        cell.value = std::move(v);
        return;
    }
    case LValueRef::Kind::CellMember: {
        RefCell& cell = ctx.cellAt(lv.cell);
        for (auto& [n, mv] : cell.value.members) {
            if (n == lv.member) {
                mv = std::move(v);
                return;
            }
        }
        throw InternalError("missing struct member " + lv.member);
    }
    case LValueRef::Kind::CellSlot: {
        RefCell& cell = ctx.cellAt(lv.cell);
        cell.value.setOverride(lv.key, std::move(v));
        return;
    }
    case LValueRef::Kind::CellLength: {
        RefCell& cell = ctx.cellAt(lv.cell);
        cell.value.bits = v.bits; // plain Solid length write, no resetting
        return;
    }
    }
}

} // namespace

Value Interpreter::eval(ExecState& st, const ExprPtr& e)
{
    return evalRValue(st, e);
}

Value Interpreter::evalRValue(ExecState& st, const ExprPtr& e)
{
    EvalCtx ctx{*this, st};
    switch (e->kind) {
    case Expr::Kind::NumberLit: {
        if (!e->type)
            return Value::uintv(e->number);
        switch (e->type->kind) {
        case TypeKind::Int: return Value::intv(e->number);
        case TypeKind::Address:
        case TypeKind::Contract: return Value::address(e->number);
        default: return Value::uintv(e->number);
        }
    }
    case Expr::Kind::BoolLit:
        return Value::boolean(e->boolval);
    case Expr::Kind::Identifier: {
        if (e->idKind == IdKind::This)
            return Value::address(st.top().self);
        if (e->idKind == IdKind::LocalVar)
            return ctx.localOf(e->name);
        if (e->idKind == IdKind::StateVar) {
            if (e->type->isReference())
                return Value::reference(ctx.resolveCell(e).ref);
            return ctx.cellAt(ctx.resolveCell(e)).value;
        }
        throw InternalError("unevaluable identifier " + e->name);
    }
    case Expr::Kind::Member: {
        switch (e->memberKind) {
        case MemberKind::MsgSender: return ctx.localOf("$msg.sender");
        case MemberKind::MsgValue: return ctx.localOf("$msg.value");
        case MemberKind::TxOrigin: return Value::address(st.txOrigin);
        case MemberKind::BlockTimestamp: return Value::uintv(st.chain.time);
        case MemberKind::EnumValue:
            return Value::enumv(e->type->name, (uint32_t)e->enumValueIndex);
        case MemberKind::Balance: {
            Value a = evalRValue(st, e->base);
            return Value::uintv(st.chain.balanceOf(a.bits));
        }
        case MemberKind::ArrayLength: {
            CellRef c = ctx.resolveCell(e->base);
            return Value::uintv(ctx.cellAt(c).value.bits);
        }
        case MemberKind::StructField: {
            if (e->type->isReference())
                return Value::reference(ctx.resolveCell(e).ref);
            CellRef base = ctx.resolveCell(e->base);
            RefCell& cell = ctx.cellAt(base);
            for (auto& [n, mv] : cell.value.members)
                if (n == e->name)
                    return mv;
            throw InternalError("missing struct member " + e->name);
        }
        default:
            throw InternalError("unevaluable member access");
        }
    }
    case Expr::Kind::Index: {
        if (e->type->isReference())
            return Value::reference(ctx.resolveCell(e).ref);
        CellRef base = ctx.resolveCell(e->base);
        const TypePtr& bt = e->base->type;
        ScalarKey key;
        TypePtr elemType;
        if (bt->kind == TypeKind::Array) {
            key = {0, evalRValue(st, e->index).bits};
            elemType = bt->elem;
        } else {
            key = scalar_key(evalRValue(st, e->index));
            elemType = bt->range;
        }
        RefMap& m = ctx.mapOf(base);
        return map_read(m, m.at(base.ref).value, key, elemType, index_);
    }
    case Expr::Kind::Unary: {
        if (e->name == "!")
            return Value::boolean(!evalRValue(st, e->base).isTrue());
        if (e->name == "-") {
            Value v = evalRValue(st, e->base);
            return Value::intv(int_wrap(-int_signed(v.bits)));
        }
        throw InternalError("bad unary " + e->name);
    }
    case Expr::Kind::Binary: {
        const std::string& op = e->name;
        if (op == "&&") {
            if (!evalRValue(st, e->lhs).isTrue())
                return Value::boolean(false);
            return Value::boolean(evalRValue(st, e->rhs).isTrue());
        }
        if (op == "||") {
            if (evalRValue(st, e->lhs).isTrue())
                return Value::boolean(true);
            return Value::boolean(evalRValue(st, e->rhs).isTrue());
        }
        Value a = evalRValue(st, e->lhs);
        Value b = evalRValue(st, e->rhs);
        const TypePtr& ot = e->lhs->type;
        if (op == "==" || op == "!=") {
            bool eq;
            if (ot->kind == TypeKind::Enum)
                eq = a.enumIndex == b.enumIndex;
            else
                eq = a.bits == b.bits;
            return Value::boolean(op == "==" ? eq : !eq);
        }
        if (op == "<" || op == ">" || op == "<=" || op == ">=") {
            int c = ot->kind == TypeKind::Int ? int_compare(a.bits, b.bits)
                                              : (a.bits < b.bits ? -1 : a.bits > b.bits ? 1 : 0);
            bool r = op == "<" ? c < 0 : op == ">" ? c > 0 : op == "<=" ? c <= 0 : c >= 0;
            return Value::boolean(r);
        }
        U256 r = ot->kind == TypeKind::Int ? wrap_binary_int(op, a.bits, b.bits)
                                           : wrap_binary_uint(op, a.bits, b.bits);
        return ot->kind == TypeKind::Int ? Value::intv(r) : Value::uintv(r);
    }
    default:
        throw InternalError("unevaluable expression");
    }
}

void Interpreter::update(ExecState& st, const std::vector<ExprPtr>& lhss,
                         const std::vector<Value>& values)
{
    if (lhss.size() != values.size())
        throw InternalError("update arity mismatch");
    EvalCtx ctx{*this, st};
    for (size_t i = 0; i < lhss.size(); ++i)
        write_lvalue(ctx, resolve_lvalue(ctx, lhss[i]), values[i]);
}

std::vector<Value> Interpreter::outs_of(ExecState&, const Frame& frame)
{
    std::vector<Value> out;
    if (!frame.func)
        return out;
    for (const auto& p : frame.func->outParams) {
        auto it = frame.locals.find(p.variable.name);
        if (it == frame.locals.end())
            throw InternalError("missing out parameter " + p.variable.name);
        out.push_back(it->second);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Statement execution

void Interpreter::fail(ExecState& st)
{
    while (!st.stack.empty()) {
        Frame fr = std::move(st.stack.back());
        st.stack.pop_back();
        switch (fr.link) {
        case Frame::Link::LowLevelCall:
        case Frame::Link::CallStub: {
            // the failed call is contained: restore and report false
            st.chain = *fr.preChain;
            st.memory = *fr.preMemory;
            st.top().locals = *fr.preLocals;
            update(st, fr.linkLhs, {Value::boolean(false)});
            return;
        }
        case Frame::Link::ContractCall:
        case Frame::Link::Create:
            continue; // exceptions propagate up the call stack
        case Frame::Link::Top:
            st.status = ExecState::Status::Fail;
            return;
        }
    }
    st.status = ExecState::Status::Fail;
}

void Interpreter::error(ExecState& st, const std::string& site)
{
    // errors are reported eagerly and never rolled back
    st.status = ExecState::Status::Error;
    st.errorSite = site;
}

void Interpreter::completeFrame(ExecState& st)
{
    if (st.stack.size() == 1) {
        st.status = ExecState::Status::Complete;
        return;
    }
    Frame fr = std::move(st.stack.back());
    st.stack.pop_back();
    switch (fr.link) {
    case Frame::Link::ContractCall:
        if (!fr.linkLhs.empty())
            update(st, fr.linkLhs, outs_of(st, fr));
        return;
    case Frame::Link::Create:
        update(st, fr.linkLhs, {Value::address(fr.createdAddr)});
        return;
    case Frame::Link::LowLevelCall:
    case Frame::Link::CallStub:
        update(st, fr.linkLhs, {Value::boolean(true)});
        return;
    case Frame::Link::Top:
        throw InternalError("nested top frame");
    }
}

void Interpreter::step(ExecState& st)
{
    if (!st.running())
        throw InternalError("step on a terminal state");
    ++st.steps;
    Frame& fr = st.top();
    if (fr.code.empty()) {
        completeFrame(st);
        return;
    }
    StmtPtr sp = fr.code.back();
    fr.code.pop_back();
    execStatement(st, sp);
}

void Interpreter::run(ExecState& st)
{
    while (st.running()) {
        if (st.steps >= config_.stepBudget)
            throw BudgetExhaustedError();
        step(st);
    }
}

void Interpreter::execStatement(ExecState& st, const StmtPtr& sp)
{
    const Stmt& s = *sp;
    Frame& fr = st.top();
    switch (s.kind) {
    case Stmt::Kind::WhileLoop: {
        if (eval(st, s.condition).isTrue()) {
            fr.code.push_back(sp); // loop unfolding keeps the loop itself
            push_reversed(fr.code, s.body);
        }
        return;
    }
    case Stmt::Kind::IfThenElse:
        push_reversed(fr.code, eval(st, s.condition).isTrue() ? s.body : s.elseBody);
        return;
    case Stmt::Kind::VariableDeclarationStatement:
        return; // locals are pre-bound
    case Stmt::Kind::Assignment: {
        if (s.lhs->type && s.lhs->type->isReference() && s.rhs->type && s.rhs->type->isReference()
            && s.lhs->location && s.rhs->location
            && frontend::classify_copy(*s.lhs->location, *s.rhs->location) == CopyKind::DeepCopy)
            throw InternalError("deep-copy assignment reached the interpreter (not explicated)");
        Value v = eval(st, s.rhs);
        update(st, {s.lhs}, {v});
        return;
    }
    case Stmt::Kind::AllocMemory: {
        RefId r = alloc_tree(st.memory, s.type, index_);
        update(st, {s.lhs}, {Value::reference(r)});
        return;
    }
    case Stmt::Kind::Revert:
        fail(st);
        return;
    case Stmt::Kind::Require:
        if (!eval(st, s.condition).isTrue())
            fail(st);
        return;
    case Stmt::Kind::VAssume:
        if (!eval(st, s.condition).isTrue())
            fail(st);
        return;
    case Stmt::Kind::VAssert:
        if (!eval(st, s.condition).isTrue())
            error(st, loc_site(fr, s));
        return;
    case Stmt::Kind::CexPrint: {
        Value v = eval(st, s.arg);
        st.cexLog.push_back({s.funcName, v});
        return;
    }
    case Stmt::Kind::Return: {
        if (!s.args.empty()) {
            std::vector<Value> vals;
            for (const auto& a : s.args)
                vals.push_back(eval(st, a));
            for (size_t i = 0; i < vals.size(); ++i)
                fr.locals[fr.func->outParams[i].variable.name] = vals[i];
        }
        fr.code.clear();
        return;
    }
    case Stmt::Kind::Transfer: {
        Address src = eval(st, s.source).bits;
        Address dest = eval(st, s.dest).bits;
        U256 value = eval(st, s.value).bits;
        AddressKind k = st.chain.kindOf(dest);
        if (k.k == AddressKind::Simple) {
            if (!set_balance(st.chain, src, dest, value))
                fail(st);
            return;
        }
        if (k.k == AddressKind::Contract) {
            if (st.chain.balanceOf(src) < value) {
                fail(st); // the succeeding conclusion is unsatisfiable
                return;
            }
            std::vector<Choice> options(2);
            options[0] = {Choice::Kind::TransferOutcome, loc_site(fr, s), Value::boolean(true), {}};
            options[1] = {Choice::Kind::TransferOutcome, loc_site(fr, s), Value::boolean(false), {}};
            size_t pick = provider_->choose(options[0].site, options);
            if (pick == 0)
                set_balance(st.chain, src, dest, value);
            else
                fail(st);
            return;
        }
        fail(st); // unused destination matches no rule
        return;
    }
    case Stmt::Kind::Send: {
        Address src = eval(st, s.source).bits;
        Address dest = eval(st, s.dest).bits;
        U256 value = eval(st, s.value).bits;
        AddressKind k = st.chain.kindOf(dest);
        if (k.k == AddressKind::Simple) {
            if (!set_balance(st.chain, src, dest, value)) {
                fail(st);
                return;
            }
            update(st, {s.lhs}, {Value::boolean(true)});
            return;
        }
        if (k.k == AddressKind::Contract) {
            std::vector<Choice> options;
            std::string site = loc_site(fr, s);
            if (st.chain.balanceOf(src) >= value)
                options.push_back({Choice::Kind::SendOutcome, site, Value::boolean(true), {}});
            options.push_back({Choice::Kind::SendOutcome, site, Value::boolean(false), {}});
            size_t pick = provider_->choose(site, options);
            if (options[pick].value.isTrue())
                set_balance(st.chain, src, dest, value);
            update(st, {s.lhs}, {options[pick].value});
            return;
        }
        fail(st);
        return;
    }
    case Stmt::Kind::ContractCall:
        execCallStatement(st, s);
        return;
    case Stmt::Kind::CreateContract: {
        std::optional<Address> fresh = lowest_unused(st.chain);
        if (!fresh) {
            fail(st); // no unused address left in the finite universe
            return;
        }
        std::string site = loc_site(fr, s);
        std::vector<Choice> options{
            {Choice::Kind::FreshAddress, site, Value::address(*fresh), {}}};
        provider_->choose(site, options);
        U256 value = eval(st, s.value).bits;
        std::vector<Value> args;
        for (const auto& a : s.args)
            args.push_back(eval(st, a));
        init_contract(st.chain, *fresh, s.type->name, index_);
        if (!set_balance(st.chain, fr.self, *fresh, value)) {
            fail(st);
            return;
        }
        const FunctionDeclaration* ctor = index_.constructorOf(s.type->name);
        if (!ctor)
            throw InternalError("missing constructor (program not explicated)");
        push_contract_call(st, *fresh, *ctor, value, args, Frame::Link::Create, {s.lhs});
        st.top().createdAddr = *fresh;
        return;
    }
    case Stmt::Kind::Call: {
        if (callHandler_)
            callHandler_->onCall(*this, st, s);
        else
            rawCall(st, s);
        return;
    }
    case Stmt::Kind::Push:
        throw InternalError("push reached the interpreter (not explicated)");
    }
}

void Interpreter::execCallStatement(ExecState& st, const Stmt& s)
{
    Frame& fr = st.top();
    Address target = eval(st, s.target).bits;
    U256 value = eval(st, s.value).bits;
    AddressKind k = st.chain.kindOf(target);
    if (!(k.k == AddressKind::Contract && k.contract == s.type->name)) {
        fail(st); // wrong contract type deployed at the called address
        return;
    }
    std::vector<Value> args;
    for (const auto& a : s.args)
        args.push_back(eval(st, a));
    if (!set_balance(st.chain, fr.self, target, value)) {
        fail(st);
        return;
    }
    const FunctionDeclaration* f = index_.function(s.type->name, s.funcName);
    if (!f)
        throw InternalError("unknown function " + s.funcName);
    push_contract_call(st, target, *f, value, args, Frame::Link::ContractCall, s.callLhs);
}

void Interpreter::rawCall(ExecState& st, const Stmt& s)
{
    Frame& fr = st.top();
    Address target = eval(st, s.address).bits;
    U256 value = eval(st, s.value).bits;
    AddressKind k = st.chain.kindOf(target);
    std::string site = loc_site(fr, s);
    if (k.k == AddressKind::Simple) {
        if (!set_balance(st.chain, fr.self, target, value)) {
            fail(st);
            return;
        }
        update(st, {s.lhs}, {Value::boolean(true)});
        return;
    }
    if (k.k != AddressKind::Contract) {
        fail(st);
        return;
    }
    auto fns = index_.interfaceFunctions(k.contract);
    if (fns.empty()) {
        fail(st);
        return;
    }
    std::vector<Choice> options;
    for (const auto* f : fns)
        options.push_back({Choice::Kind::CallTarget, site, {}, f->name});
    size_t pick = provider_->choose(site, options);
    const FunctionDeclaration* f = fns[pick];

    // snapshot before any effect: a failing callee reverts the transfer too
    auto preChain = std::make_shared<const ChainState>(st.chain);
    auto preMemory = std::make_shared<const RefMap>(st.memory);
    auto preLocals = std::make_shared<const LocalContext>(fr.locals);
    if (!set_balance(st.chain, fr.self, target, value)) {
        fail(st);
        return;
    }
    // the signature is ignored: parameters are nondeterministically chosen
    std::vector<Value> args;
    for (size_t i = 0; i < f->inParams.size(); ++i) {
        const TypePtr& pt = f->inParams[i].variable.type;
        if (pt->isReference())
            args.push_back(Value::reference(alloc_tree(st.memory, pt, index_)));
        else
            args.push_back(provider_->havocScalar(site + "/arg" + std::to_string(i), pt));
    }
    push_contract_call(st, target, *f, value, args, Frame::Link::LowLevelCall, {s.lhs});
    Frame& callee = st.top();
    callee.preChain = preChain;
    callee.preMemory = preMemory;
    callee.preLocals = preLocals;
}

// ---------------------------------------------------------------------------
// Transactions

TransactionResult Interpreter::apply_transaction(const ChainState& chain, const Transaction& tx)
{
    TransactionResult res;
    res.chain = chain;
    auto invalid = [&](const std::string& why) {
        res.kind = TransactionResult::Kind::Invalid;
        res.invalidReason = why;
        return res;
    };
    switch (tx.kind) {
    case Transaction::Kind::CreateAddress: {
        std::optional<Address> fresh = lowest_unused(chain);
        if (!fresh)
            return invalid("no unused address available");
        std::vector<Choice> options{
            {Choice::Kind::FreshAddress, "create-address", Value::address(*fresh), {}}};
        provider_->choose("create-address", options);
        AddressCell& cell = res.chain.at(*fresh);
        cell.type = AddressKind::simple();
        cell.balance = tx.value;
        res.kind = TransactionResult::Kind::Committed;
        return res;
    }
    case Transaction::Kind::CurrencyTransfer: {
        if (chain.kindOf(tx.src).k != AddressKind::Simple)
            return invalid("source is not a simple address");
        AddressKind dk = chain.kindOf(tx.dest);
        if (dk.k == AddressKind::Unused)
            return invalid("destination is unused");
        if (!set_balance(res.chain, tx.src, tx.dest, tx.value))
            return invalid("insufficient balance");
        res.kind = TransactionResult::Kind::Committed;
        return res;
    }
    case Transaction::Kind::MintBlock: {
        if (tx.newTime <= chain.time)
            return invalid("time must strictly increase");
        res.chain.time = tx.newTime;
        res.kind = TransactionResult::Kind::Committed;
        return res;
    }
    case Transaction::Kind::CreateContract: {
        if (!index_.contract(tx.contractType))
            return invalid("unknown contract type " + tx.contractType);
        std::optional<Address> fresh = lowest_unused(chain);
        if (!fresh)
            return invalid("no unused address available");
        std::vector<Choice> options{
            {Choice::Kind::FreshAddress, "create-contract", Value::address(*fresh), {}}};
        provider_->choose("create-contract", options);
        const FunctionDeclaration* ctor = index_.constructorOf(tx.contractType);
        if (!ctor)
            return invalid("contract has no constructor (program not explicated)");
        if (tx.args.size() != ctor->inParams.size())
            return invalid("constructor arity mismatch");
        ChainState work = chain;
        init_contract(work, *fresh, tx.contractType, index_);
        if (!set_balance(work, tx.src, *fresh, tx.value))
            return invalid("insufficient balance");
        ExecState st = make_exec_state(std::move(work), tx.src, *fresh, *ctor, tx.src, tx.value,
                                       tx.args);
        return finishRun(st, res);
    }
    case Transaction::Kind::ExecuteContract: {
        AddressKind k = chain.kindOf(tx.dest);
        if (!(k.k == AddressKind::Contract && k.contract == tx.contractType))
            return invalid("no instance of " + tx.contractType + " at the called address");
        const FunctionDeclaration* f = index_.function(tx.contractType, tx.func);
        if (!f || f->isConstructor || f->visibility != Visibility::Public)
            return invalid("no callable function " + tx.func);
        if (tx.args.size() != f->inParams.size())
            return invalid("argument arity mismatch");
        ChainState work = chain;
        if (!set_balance(work, tx.src, tx.dest, tx.value))
            return invalid("insufficient balance");
        ExecState st = make_exec_state(std::move(work), tx.src, tx.dest, *f, tx.src, tx.value,
                                       tx.args);
        return finishRun(st, res);
    }
    }
    return invalid("bad transaction kind");
}

TransactionResult Interpreter::finishRun(ExecState& st, TransactionResult& res)
{
    try {
        run(st);
    } catch (const BudgetExhaustedError&) {
        res.kind = TransactionResult::Kind::BudgetExhausted;
        res.cexLog = st.cexLog;
        return res;
    }
    res.cexLog = st.cexLog;
    switch (st.status) {
    case ExecState::Status::Complete:
        res.kind = TransactionResult::Kind::Committed;
        res.chain = std::move(st.chain);
        return res;
    case ExecState::Status::Fail:
        res.kind = TransactionResult::Kind::Invalid;
        res.invalidReason = "execution failed";
        return res;
    case ExecState::Status::Error:
        res.kind = TransactionResult::Kind::Error;
        res.errorSite = st.errorSite;
        return res;
    default:
        throw InternalError("run ended in a non-terminal state");
    }
}

// ---------------------------------------------------------------------------
// One-step successor enumeration (test surface)

namespace {

// captures the first decision's options, then replays a fixed pick
class ProbeProvider : public ChoiceProvider {
public:
    explicit ProbeProvider(size_t pick)
        : pick_(pick)
    {
    }
    size_t choose(const std::string&, const std::vector<Choice>& options) override
    {
        if (!seen_) {
            seen_ = true;
            captured_ = options;
            return std::min(pick_, options.size() - 1);
        }
        return 0;
    }
    bool seen() const { return seen_; }
    const std::vector<Choice>& captured() const { return captured_; }

private:
    size_t pick_;
    bool seen_ = false;
    std::vector<Choice> captured_;
};

} // namespace

std::vector<std::pair<std::optional<Choice>, ExecState>>
step_successors(const Program& program, const InterpreterConfig& config, const ExecState& st)
{
    std::vector<std::pair<std::optional<Choice>, ExecState>> out;
    ProbeProvider probe(0);
    Interpreter interp(program, config, probe);
    ExecState first = st;
    interp.step(first);
    if (!probe.seen()) {
        out.push_back({std::nullopt, std::move(first)});
        return out;
    }
    std::vector<Choice> options = probe.captured();
    out.push_back({options[0], std::move(first)});
    for (size_t i = 1; i < options.size(); ++i) {
        ProbeProvider p(i);
        Interpreter in2(program, config, p);
        ExecState next = st;
        in2.step(next);
        out.push_back({options[i], std::move(next)});
    }
    return out;
}

} // namespace solidbmc::sem
