// solidbmc: bounded model checking toolchain for a Solidity subset
// Copyright 2026 The solidbmc Authors.
// SPDX-License-Identifier: Apache-2.0
#include "explicator/explicate.hpp"

#include "frontend/typecheck.hpp"

#include <functional>

namespace solidbmc::explicator {

using namespace ast;

namespace {

// -- small expression builders ------------------------------------------------

ExprPtr lengthOf(const ExprPtr& arr) { return Expr::member(arr, "length"); }

ExprPtr defaultLiteral(const TypePtr& t, const ProgramIndex& idx)
{
    switch (t->kind) {
    case TypeKind::UInt:
    case TypeKind::Int:
    case TypeKind::Address:
    case TypeKind::Contract:
        return Expr::num(0);
    case TypeKind::Bool:
        return Expr::boolean(false);
    case TypeKind::Enum: {
        const EnumDecl* e = idx.enumDecl(t->name);
        if (!e)
            throw InternalError("unknown enum " + t->name);
        return Expr::member(Expr::ident(t->name), e->values.front());
    }
    default:
        throw InternalError("no default literal for " + type_to_string(t));
    }
}

Stmt assignStmt(ExprPtr lhs, ExprPtr rhs, bool solidLength = false)
{
    Stmt s;
    s.kind = Stmt::Kind::Assignment;
    s.lhs = std::move(lhs);
    s.rhs = std::move(rhs);
    s.solidLength = solidLength;
    return s;
}

Stmt requireStmt(ExprPtr cond)
{
    Stmt s;
    s.kind = Stmt::Kind::Require;
    s.condition = std::move(cond);
    return s;
}

Stmt declStmt(const std::string& name, const TypePtr& t, DataLocation loc)
{
    Stmt s;
    s.kind = Stmt::Kind::VariableDeclarationStatement;
    s.decl.variable.name = name;
    s.decl.variable.type = t;
    s.decl.dataLocation = loc;
    s.decl.isPointer = t->isReference();
    return s;
}

Stmt allocStmt(ExprPtr lhs, const TypePtr& t)
{
    Stmt s;
    s.kind = Stmt::Kind::AllocMemory;
    s.lhs = std::move(lhs);
    s.type = t;
    return s;
}

// -- reset blocks (array resizing) ---------------------------------------------

// Statements that reset `elem` (an element lvalue of type t) to its default.
// Mappings keep their contents; nested dynamic arrays become a resizing
// assignment to zero that later sweeps expand into this same template.
void resetStatements(const ExprPtr& elem, const TypePtr& t, const ProgramIndex& idx,
                     StmtList& out)
{
    switch (t->kind) {
    case TypeKind::Mapping:
        return; // not reset by resizing
    case TypeKind::Struct: {
        const StructDecl* sd = idx.structDecl(t->name);
        if (!sd)
            throw InternalError("unknown struct " + t->name);
        for (const auto& m : sd->members)
            resetStatements(Expr::member(elem, m.name), m.type, idx, out);
        return;
    }
    case TypeKind::Array: {
        if (t->fixedSize) {
            for (U256 i = 0; i < *t->fixedSize; ++i)
                resetStatements(Expr::indexOf(elem, Expr::num(i)), t->elem, idx, out);
        } else {
            // a resizing assignment; the fixed point turns it into a block
            // of this same kind
            out.push_back(make_stmt(assignStmt(lengthOf(elem), Expr::num(0))));
        }
        return;
    }
    default:
        out.push_back(make_stmt(assignStmt(elem, defaultLiteral(t, idx))));
        return;
    }
}

} // namespace

StmtList explicate_resize(const StmtPtr& lengthAssign, NameGen& names, const ProgramIndex& idx)
{
    const Stmt& s = *lengthAssign;
    if (s.kind != Stmt::Kind::Assignment || s.lhs->memberKind != MemberKind::ArrayLength)
        throw InternalError("explicate_resize on a non-length assignment");
    ExprPtr arr = s.lhs->base;
    ExprPtr newSize = s.rhs;
    const TypePtr& elemType = arr->type->elem;

    std::string iname = names.fresh("i");
    ExprPtr i = Expr::ident(iname);

    StmtList resetBody;
    resetStatements(Expr::indexOf(arr, i), elemType, idx, resetBody);
    resetBody.push_back(make_stmt(assignStmt(i, Expr::binary("+", i, Expr::num(1)))));

    Stmt loop;
    loop.kind = Stmt::Kind::WhileLoop;
    loop.condition = Expr::binary("<", i, lengthOf(arr));
    loop.body = std::move(resetBody);

    Stmt guard;
    guard.kind = Stmt::Kind::IfThenElse;
    guard.condition = Expr::binary(">", lengthOf(arr), newSize);
    guard.body.push_back(make_stmt(declStmt(iname, type_uint(), DataLocation::None)));
    guard.body.push_back(make_stmt(assignStmt(i, newSize)));
    guard.body.push_back(make_stmt(std::move(loop)));

    StmtList out;
    out.push_back(make_stmt(std::move(guard)));
    out.push_back(make_stmt(assignStmt(s.lhs, newSize, /*solidLength=*/true)));
    return out;
}

namespace {

// element access annotated well enough for copy classification
ExprPtr annotated_member(const ExprPtr& base, const std::string& name, const TypePtr& t)
{
    ExprPtr e = Expr::member(base, name);
    e->memberKind = MemberKind::StructField;
    e->type = t;
    if (t->isReference())
        e->location = base->location == LocationKind::MemoryPointer
            ? LocationKind::MemoryPointer
            : LocationKind::StorageReference;
    return e;
}

ExprPtr annotated_index(const ExprPtr& base, ExprPtr idx, const TypePtr& t)
{
    ExprPtr e = Expr::indexOf(base, std::move(idx));
    e->type = t;
    if (t->isReference())
        e->location = base->location == LocationKind::MemoryPointer
            ? LocationKind::MemoryPointer
            : LocationKind::StorageReference;
    return e;
}

// the element copy, further expanded when it deep-copies again
void element_copy(const ExprPtr& lhs, const ExprPtr& rhs, NameGen& names,
                  const ProgramIndex& idx, StmtList& out)
{
    if (lhs->type->isReference()
        && frontend::classify_copy(*lhs->location, *rhs->location) == CopyKind::DeepCopy) {
        StmtList inner = explicate_deep_copy(make_stmt(assignStmt(lhs, rhs)), names, idx);
        out.insert(out.end(), inner.begin(), inner.end());
        return;
    }
    out.push_back(make_stmt(assignStmt(lhs, rhs)));
}

} // namespace

StmtList explicate_deep_copy(const StmtPtr& assign, NameGen& names, const ProgramIndex& idx)
{
    const Stmt& s = *assign;
    const TypePtr& t = s.lhs->type;
    StmtList out;
    if (s.lhs->location == LocationKind::MemoryPointer)
        out.push_back(make_stmt(allocStmt(s.lhs, t)));
    switch (t->kind) {
    case TypeKind::Struct: {
        const StructDecl* sd = idx.structDecl(t->name);
        if (!sd)
            throw InternalError("unknown struct " + t->name);
        for (const auto& m : sd->members) {
            if (m.type->kind == TypeKind::Mapping)
                continue; // mapping members are not copied
            element_copy(annotated_member(s.lhs, m.name, m.type),
                         annotated_member(s.rhs, m.name, m.type), names, idx, out);
        }
        return out;
    }
    case TypeKind::Array: {
        if (t->fixedSize) {
            for (U256 k = 0; k < *t->fixedSize; ++k)
                element_copy(annotated_index(s.lhs, Expr::num(k), t->elem),
                             annotated_index(s.rhs, Expr::num(k), t->elem), names, idx, out);
            return out;
        }
        // lhs.length = rhs.length (a resizing assignment), then a data loop
        out.push_back(make_stmt(assignStmt(lengthOf(s.lhs), lengthOf(s.rhs))));
        std::string iname = names.fresh("i");
        ExprPtr i = Expr::ident(iname);
        out.push_back(make_stmt(declStmt(iname, type_uint(), DataLocation::None)));
        out.push_back(make_stmt(assignStmt(i, Expr::num(0))));
        Stmt loop;
        loop.kind = Stmt::Kind::WhileLoop;
        loop.condition = Expr::binary("<", i, lengthOf(s.lhs));
        element_copy(annotated_index(s.lhs, i, t->elem), annotated_index(s.rhs, i, t->elem),
                     names, idx, loop.body);
        loop.body.push_back(make_stmt(assignStmt(i, Expr::binary("+", i, Expr::num(1)))));
        out.push_back(make_stmt(std::move(loop)));
        return out;
    }
    default:
        throw InternalError("deep copy of non-composite type " + type_to_string(t));
    }
}

StmtList explicate_push(const StmtPtr& push)
{
    const Stmt& s = *push;
    if (s.kind != Stmt::Kind::Push)
        throw InternalError("explicate_push on a non-push statement");
    StmtList out;
    // growth never resets elements, so the length write is already plain
    out.push_back(make_stmt(assignStmt(lengthOf(s.array),
                                       Expr::binary("+", lengthOf(s.array), Expr::num(1)),
                                       /*solidLength=*/true)));
    out.push_back(make_stmt(assignStmt(
        Expr::indexOf(s.array, Expr::binary("-", lengthOf(s.array), Expr::num(1))), s.arg)));
    return out;
}

// ---------------------------------------------------------------------------
// Pass driver

namespace {

using Rewrite = std::function<bool(const StmtPtr&, StmtList&)>; // true = replaced

StmtList rewriteList(const StmtList& in, const Rewrite& rw, bool& changed)
{
    StmtList out;
    for (const auto& sp : in) {
        // recurse into bodies first
        StmtPtr cur = sp;
        if (!sp->body.empty() || !sp->elseBody.empty()) {
            Stmt copy = *sp;
            bool sub = false;
            copy.body = rewriteList(sp->body, rw, sub);
            copy.elseBody = rewriteList(sp->elseBody, rw, sub);
            if (sub) {
                changed = true;
                cur = make_stmt(std::move(copy));
            }
        }
        StmtList replacement;
        if (rw(cur, replacement)) {
            changed = true;
            out.insert(out.end(), replacement.begin(), replacement.end());
        } else {
            out.push_back(cur);
        }
    }
    return out;
}

// -- precondition insertion -----------------------------------------------------

// requires guarding one statement's expressions, in evaluation order
void collectGuards(const ExprPtr& e, StmtList& out)
{
    if (!e)
        return;
    switch (e->kind) {
    case Expr::Kind::Member:
        collectGuards(e->base, out);
        return;
    case Expr::Kind::Index:
        collectGuards(e->base, out);
        collectGuards(e->index, out);
        if (e->base->type && e->base->type->kind == TypeKind::Array)
            out.push_back(make_stmt(requireStmt(
                Expr::binary("<", e->index, lengthOf(e->base)))));
        return;
    case Expr::Kind::Binary:
        collectGuards(e->lhs, out);
        collectGuards(e->rhs, out);
        if (e->name == "/" || e->name == "%")
            out.push_back(make_stmt(requireStmt(Expr::binary("!=", e->rhs, Expr::num(0)))));
        return;
    case Expr::Kind::Unary:
        collectGuards(e->base, out);
        return;
    default:
        return;
    }
}

StmtList guardsFor(const Stmt& s)
{
    StmtList out;
    // canonical order over the statement's evaluated expressions
    collectGuards(s.condition, out);
    collectGuards(s.lhs, out);
    collectGuards(s.rhs, out);
    for (const auto& e : s.callLhs)
        collectGuards(e, out);
    for (const auto& e : s.args)
        collectGuards(e, out);
    collectGuards(s.target, out);
    collectGuards(s.value, out);
    collectGuards(s.source, out);
    collectGuards(s.dest, out);
    collectGuards(s.address, out);
    collectGuards(s.arg, out);
    collectGuards(s.array, out);
    return out;
}

bool listEndsWith(const StmtList& list, const StmtList& tail)
{
    if (tail.size() > list.size())
        return false;
    for (size_t i = 0; i < tail.size(); ++i)
        if (!stmt_equal(list[list.size() - tail.size() + i], tail[i]))
            return false;
    return true;
}

// Inserts missing requires before each guarded statement. While loops also
// re-check at the end of the body, since the condition re-evaluates.
StmtList passPreconditions(const StmtList& in, bool& changed)
{
    StmtList out;
    for (const auto& sp : in) {
        StmtPtr cur = sp;
        if (!sp->body.empty() || !sp->elseBody.empty()) {
            Stmt copy = *sp;
            bool sub = false;
            copy.body = passPreconditions(sp->body, sub);
            copy.elseBody = passPreconditions(sp->elseBody, sub);
            if (sp->kind == Stmt::Kind::WhileLoop) {
                StmtList guards = guardsFor(*sp);
                if (!guards.empty() && !listEndsWith(copy.body, guards)) {
                    copy.body.insert(copy.body.end(), guards.begin(), guards.end());
                    sub = true;
                }
            }
            if (sub) {
                changed = true;
                cur = make_stmt(std::move(copy));
            }
        }
        StmtList guards = guardsFor(*cur);
        if (!guards.empty() && !listEndsWith(out, guards)) {
            changed = true;
            out.insert(out.end(), guards.begin(), guards.end());
        }
        out.push_back(cur);
    }
    return out;
}

// -- whole-program passes ---------------------------------------------------------

struct Pipeline {
    Program& p;
    NameGen names;
    std::unique_ptr<ProgramIndex> idx;

    void reindex() { idx = std::make_unique<ProgramIndex>(p); }

    bool sweep()
    {
        bool changed = false;
        for (auto& c : p.contracts) {
            for (auto& f : c.functions) {
                bool fnChanged = false;
                // non-payable functions require a zero payment
                if (!f.isPayable) {
                    Stmt req = requireStmt(Expr::binary(
                        "==", Expr::member(Expr::ident("msg"), "value"), Expr::num(0)));
                    if (f.body.empty() || !stmt_equal(f.body.front(), make_stmt(Stmt(req)))) {
                        f.body.insert(f.body.begin(), make_stmt(std::move(req)));
                        fnChanged = true;
                    }
                }
                f.body = passPreconditions(f.body, fnChanged);
                f.body = rewriteList(f.body, [&](const StmtPtr& s, StmtList& rep) {
                    return rewritePush(s, rep);
                }, fnChanged);
                f.body = rewriteList(f.body, [&](const StmtPtr& s, StmtList& rep) {
                    return rewriteResize(s, rep);
                }, fnChanged);
                f.body = rewriteList(f.body, [&](const StmtPtr& s, StmtList& rep) {
                    return rewriteDeepCopy(s, rep);
                }, fnChanged);
                f.body = rewriteList(f.body, [&](const StmtPtr& s, StmtList& rep) {
                    return rewriteArguments(s, rep);
                }, fnChanged);
                fnChanged |= insertInitializers(f);
                changed |= fnChanged;
            }
        }
        return changed;
    }

    bool rewritePush(const StmtPtr& sp, StmtList& rep)
    {
        if (sp->kind != Stmt::Kind::Push)
            return false;
        rep = explicate_push(sp);
        return true;
    }

    bool rewriteResize(const StmtPtr& sp, StmtList& rep)
    {
        if (sp->kind != Stmt::Kind::Assignment || sp->solidLength)
            return false;
        if (!sp->lhs || sp->lhs->memberKind != MemberKind::ArrayLength)
            return false;
        rep = explicate_resize(sp, names, *idx);
        return true;
    }

    bool rewriteDeepCopy(const StmtPtr& sp, StmtList& rep)
    {
        if (sp->kind != Stmt::Kind::Assignment)
            return false;
        const auto& lhs = sp->lhs;
        const auto& rhs = sp->rhs;
        if (!lhs->type || !lhs->type->isReference() || !rhs->type || !rhs->type->isReference())
            return false;
        if (!lhs->location || !rhs->location)
            throw InternalError("reference expression without a location kind");
        if (frontend::classify_copy(*lhs->location, *rhs->location) != CopyKind::DeepCopy)
            return false;
        rep = explicate_deep_copy(sp, names, *idx);
        return true;
    }

    // deep-copying argument passing goes through fresh memory temporaries
    bool rewriteArguments(const StmtPtr& sp, StmtList& rep)
    {
        if (sp->kind != Stmt::Kind::ContractCall && sp->kind != Stmt::Kind::CreateContract)
            return false;
        const std::vector<LocalVariableDeclaration>* params = nullptr;
        if (sp->kind == Stmt::Kind::ContractCall) {
            const FunctionDeclaration* f = idx->function(sp->type->name, sp->funcName);
            if (!f)
                throw InternalError("unknown callee " + sp->funcName);
            params = &f->inParams;
        } else {
            const FunctionDeclaration* ctor = idx->constructorOf(sp->type->name);
            if (!ctor)
                return false; // synthesised later
            params = &ctor->inParams;
        }
        bool needs = false;
        for (size_t i = 0; i < sp->args.size(); ++i) {
            const auto& arg = sp->args[i];
            if (!arg->type || !arg->type->isReference() || !arg->location)
                continue;
            LocationKind paramLoc = (*params)[i].dataLocation == DataLocation::Storage
                ? LocationKind::StoragePointer
                : LocationKind::MemoryPointer;
            if (frontend::classify_copy(paramLoc, *arg->location) == CopyKind::DeepCopy)
                needs = true;
        }
        if (!needs)
            return false;
        Stmt call = *sp;
        for (size_t i = 0; i < call.args.size(); ++i) {
            const auto& arg = call.args[i];
            if (!arg->type || !arg->type->isReference() || !arg->location)
                continue;
            LocationKind paramLoc = (*params)[i].dataLocation == DataLocation::Storage
                ? LocationKind::StoragePointer
                : LocationKind::MemoryPointer;
            if (frontend::classify_copy(paramLoc, *arg->location) != CopyKind::DeepCopy)
                continue;
            std::string tmp = names.fresh("tmp");
            rep.push_back(make_stmt(declStmt(tmp, arg->type, DataLocation::Memory)));
            rep.push_back(make_stmt(assignStmt(Expr::ident(tmp), arg)));
            call.args[i] = Expr::ident(tmp);
        }
        rep.push_back(make_stmt(std::move(call)));
        return true;
    }

    // returns carrying reference values route through the out-parameters
    bool rewriteReturns(FunctionDeclaration& f)
    {
        bool changed = false;
        f.body = rewriteList(f.body, [&](const StmtPtr& sp, StmtList& rep) {
            if (sp->kind != Stmt::Kind::Return || sp->args.empty())
                return false;
            bool needs = false;
            for (size_t i = 0; i < sp->args.size(); ++i) {
                const auto& e = sp->args[i];
                if (e->type && e->type->isReference() && e->location
                    && frontend::classify_copy(LocationKind::MemoryPointer, *e->location)
                        == CopyKind::DeepCopy)
                    needs = true;
            }
            if (!needs)
                return false;
            for (size_t i = 0; i < sp->args.size(); ++i)
                rep.push_back(make_stmt(
                    assignStmt(Expr::ident(f.outParams[i].variable.name), sp->args[i])));
            Stmt ret;
            ret.kind = Stmt::Kind::Return;
            rep.push_back(make_stmt(std::move(ret)));
            return true;
        }, changed);
        return changed;
    }

    bool insertInitializers(FunctionDeclaration& f)
    {
        StmtList inits;
        auto add = [&](const LocalVariableDeclaration& d) {
            const TypePtr& t = d.variable.type;
            ExprPtr name = Expr::ident(d.variable.name);
            if (t->isReference()) {
                if (d.dataLocation == DataLocation::Memory)
                    inits.push_back(make_stmt(allocStmt(name, t)));
                // storage pointers are initialised at their declaration
            } else {
                inits.push_back(make_stmt(assignStmt(name, defaultLiteral(t, *idx))));
            }
        };
        for (const auto& d : f.outParams)
            add(d);
        for (const auto& d : frontend::collect_locals(f))
            add(d);
        if (inits.empty())
            return false;
        // insertion point: after the leading zero-payment require, if any
        size_t at = 0;
        if (!f.body.empty() && f.body[0]->kind == Stmt::Kind::Require)
            at = 1;
        bool present = f.body.size() >= at + inits.size();
        if (present)
            for (size_t i = 0; i < inits.size(); ++i)
                if (!stmt_equal(f.body[at + i], inits[i])) {
                    present = false;
                    break;
                }
        if (present)
            return false;
        f.body.insert(f.body.begin() + at, inits.begin(), inits.end());
        return true;
    }
};

} // namespace

Program explicate(const Program& input)
{
    Program p = input;
    // every contract gets a constructor so deployment always has a body
    for (auto& c : p.contracts) {
        bool has = false;
        for (const auto& f : c.functions)
            if (f.isConstructor)
                has = true;
        if (!has) {
            FunctionDeclaration ctor;
            ctor.isConstructor = true;
            ctor.name = "constructor";
            ctor.visibility = Visibility::Public;
            c.functions.push_back(std::move(ctor));
        }
    }
    frontend::type_check(p);

    Pipeline pipe{p, {}, nullptr};
    for (int round = 0;; ++round) {
        if (round > 200)
            throw InternalError("explication did not reach a fixed point");
        pipe.reindex();
        bool changed = pipe.sweep();
        for (auto& c : p.contracts)
            for (auto& f : c.functions)
                changed |= pipe.rewriteReturns(f);
        frontend::type_check(p);
        if (!changed)
            break;
    }
    return p;
}

// ---------------------------------------------------------------------------
// Structural scans

namespace {

bool scanStmts(const StmtList& stmts, const std::function<bool(const StmtPtr&)>& pred)
{
    for (const auto& s : stmts) {
        if (pred(s))
            return true;
        if (scanStmts(s->body, pred) || scanStmts(s->elseBody, pred))
            return true;
    }
    return false;
}

} // namespace

bool has_unexplicated_deep_copy(const Program& p)
{
    for (const auto& c : p.contracts)
        for (const auto& f : c.functions)
            if (scanStmts(f.body, [](const StmtPtr& s) {
                    if (s->kind != Stmt::Kind::Assignment)
                        return false;
                    const auto& l = s->lhs;
                    const auto& r = s->rhs;
                    return l->type && l->type->isReference() && r->type && r->type->isReference()
                        && l->location && r->location
                        && frontend::classify_copy(*l->location, *r->location)
                        == CopyKind::DeepCopy;
                }))
                return true;
    return false;
}

bool all_index_accesses_guarded(const Program& p)
{
    // every statement whose expressions index an array must be directly
    // preceded by exactly its guard sequence
    bool ok = true;
    std::function<void(const StmtList&)> walk = [&](const StmtList& stmts) {
        for (size_t i = 0; i < stmts.size(); ++i) {
            const StmtPtr& s = stmts[i];
            StmtList guards = guardsFor(*s);
            if (!guards.empty()) {
                StmtList before(stmts.begin(), stmts.begin() + i);
                if (!listEndsWith(before, guards))
                    ok = false;
            }
            walk(s->body);
            walk(s->elseBody);
            if (s->kind == Stmt::Kind::WhileLoop && !guardsFor(*s).empty()
                && !listEndsWith(s->body, guardsFor(*s)))
                ok = false;
        }
    };
    for (const auto& c : p.contracts)
        for (const auto& f : c.functions)
            walk(f.body);
    return ok;
}

} // namespace solidbmc::explicator
