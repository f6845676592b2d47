// solidbmc: bounded model checking toolchain for a Solidity subset
// Copyright 2026 The solidbmc Authors.
// SPDX-License-Identifier: Apache-2.0
#include "frontend/typecheck.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace solidbmc::frontend {

using namespace ast;

CopyKind classify_copy(LocationKind lhs, LocationKind rhs)
{
    switch (lhs) {
    case LocationKind::StorageReference:
        return CopyKind::DeepCopy; // any right-hand side
    case LocationKind::MemoryPointer:
        return rhs == LocationKind::MemoryPointer ? CopyKind::Alias : CopyKind::DeepCopy;
    case LocationKind::StoragePointer:
        return rhs == LocationKind::MemoryPointer ? CopyKind::DeepCopy : CopyKind::Alias;
    }
    throw InternalError("bad location kind");
}

std::vector<LocalVariableDeclaration> collect_locals(const FunctionDeclaration& f)
{
    std::vector<LocalVariableDeclaration> out;
    std::function<void(const StmtList&)> walk = [&](const StmtList& stmts) {
        for (const auto& s : stmts) {
            if (s->kind == Stmt::Kind::VariableDeclarationStatement)
                out.push_back(s->decl);
            walk(s->body);
            walk(s->elseBody);
        }
    };
    walk(f.body);
    return out;
}

namespace {

// `length`/`balance`/`value` etc. are fine as user names: member lookup
// disambiguates by the base type and call forms by their shape.
const std::set<std::string> kReservedIdents = {
    "this", "msg", "tx", "block", "Verification",
};

class Checker {
public:
    explicit Checker(Program& p)
        : program_(p)
    {
    }

    void run()
    {
        collectNames();
        resolveDeclarations();
        for (auto& c : program_.contracts) {
            current_ = &c;
            for (auto& f : c.functions)
                checkFunction(f);
        }
    }

private:
    Program& program_;
    Contract* current_ = nullptr;
    const FunctionDeclaration* currentFunc_ = nullptr;
    std::set<std::string> contractNames_;
    std::map<std::string, const EnumDecl*> enums_;
    std::map<std::string, const StructDecl*> structs_;
    std::map<std::string, LocalVariableDeclaration> locals_; // per function

    // -- declaration collection / resolution -------------------------------

    void collectNames()
    {
        std::set<std::string> typeNames;
        for (auto& c : program_.contracts) {
            if (!contractNames_.insert(c.name).second)
                fail_type(c.loc, "duplicate contract name " + c.name);
            if (!typeNames.insert(c.name).second)
                fail_type(c.loc, "name " + c.name + " already used");
        }
        for (auto& c : program_.contracts) {
            for (auto& e : c.enums) {
                if (!typeNames.insert(e.name).second)
                    fail_type(e.loc, "duplicate type name " + e.name);
                enums_[e.name] = &e;
                std::set<std::string> vals(e.values.begin(), e.values.end());
                if (vals.size() != e.values.size())
                    fail_type(e.loc, "duplicate enum value in " + e.name);
            }
            for (auto& s : c.structs) {
                if (!typeNames.insert(s.name).second)
                    fail_type(s.loc, "duplicate type name " + s.name);
                structs_[s.name] = &s;
            }
            std::set<std::string> fnames, vnames;
            for (auto& f : c.functions)
                if (!fnames.insert(f.name).second)
                    fail_type(f.loc, "duplicate function " + c.name + "." + f.name);
            for (auto& v : c.variables) {
                if (!vnames.insert(v.name).second)
                    fail_type(v.loc, "duplicate state variable " + v.name);
                checkName(v.name, v.loc);
            }
        }
    }

    void checkName(const std::string& n, SourceLoc loc)
    {
        if (kReservedIdents.count(n))
            fail_type(loc, "'" + n + "' is a reserved name");
        if (contractNames_.count(n) || enums_.count(n) || structs_.count(n))
            fail_type(loc, "'" + n + "' is already a type name");
    }

    TypePtr resolveType(const TypePtr& t, SourceLoc loc)
    {
        switch (t->kind) {
        case TypeKind::UInt:
        case TypeKind::Int:
        case TypeKind::Bool:
        case TypeKind::Address:
            return t;
        case TypeKind::Contract:
            if (!contractNames_.count(t->name))
                fail_type(loc, "unknown contract type " + t->name);
            return t;
        case TypeKind::Array: {
            if (t->fixedSize && *t->fixedSize > 1024)
                fail_unsupported(loc, "fixed array larger than 1024 elements");
            TypePtr e = resolveType(t->elem, loc);
            return e == t->elem ? t : type_array(e, t->fixedSize);
        }
        case TypeKind::Mapping: {
            TypePtr d = resolveType(t->domain, loc);
            TypePtr r = resolveType(t->range, loc);
            if (!d->isElementary())
                fail_type(loc, "mapping domain must be an elementary type, got " + type_to_string(d));
            return type_mapping(d, r);
        }
        case TypeKind::Enum:
            return t;
        case TypeKind::Struct: {
            // parser emits all user-type names as struct placeholders
            if (structs_.count(t->name))
                return t;
            if (enums_.count(t->name))
                return type_enum(t->name);
            if (contractNames_.count(t->name))
                return type_contract(t->name);
            fail_type(loc, "unknown type " + t->name);
        }
        }
        throw InternalError("bad type kind");
    }

    // reference types stored in memory must not contain mappings
    void checkMemoryLegal(const TypePtr& t, SourceLoc loc, std::set<std::string>& visiting)
    {
        switch (t->kind) {
        case TypeKind::Mapping:
            fail_type(loc, "mappings cannot live in memory");
            break;
        case TypeKind::Array:
            checkMemoryLegal(t->elem, loc, visiting);
            break;
        case TypeKind::Struct: {
            if (!visiting.insert(t->name).second)
                return;
            const StructDecl* s = structs_.at(t->name);
            for (const auto& m : s->members)
                checkMemoryLegal(m.type, loc, visiting);
            break;
        }
        default:
            break;
        }
    }
    void checkMemoryLegal(const TypePtr& t, SourceLoc loc)
    {
        std::set<std::string> visiting;
        checkMemoryLegal(t, loc, visiting);
    }

    void resolveDeclarations()
    {
        for (auto& c : program_.contracts) {
            for (auto& s : c.structs) {
                std::set<std::string> mnames;
                for (auto& m : s.members) {
                    checkName(m.name, m.loc);
                    if (!mnames.insert(m.name).second)
                        fail_type(m.loc, "duplicate struct member " + m.name);
                    m.type = resolveType(m.type, m.loc);
                }
            }
            for (auto& v : c.variables)
                v.type = resolveType(v.type, v.loc);
            for (auto& f : c.functions) {
                std::set<std::string> pnames;
                auto fixParams = [&](std::vector<LocalVariableDeclaration>& params, bool isOut) {
                    for (auto& p : params) {
                        if (p.variable.name[0] != '$')
                            checkName(p.variable.name, p.variable.loc);
                        if (!pnames.insert(p.variable.name).second)
                            fail_type(p.variable.loc, "duplicate parameter " + p.variable.name);
                        p.variable.type = resolveType(p.variable.type, p.variable.loc);
                        p.isPointer = p.variable.type->isReference();
                        if (p.isPointer && p.dataLocation == DataLocation::None)
                            fail_type(p.variable.loc,
                                      "reference-type parameter needs a data location");
                        if (!p.isPointer && p.dataLocation != DataLocation::None)
                            fail_type(p.variable.loc,
                                      "data location given for a value-type parameter");
                        if (p.isPointer && p.dataLocation == DataLocation::Memory)
                            checkMemoryLegal(p.variable.type, p.variable.loc);
                        if (p.isPointer && isOut && p.dataLocation != DataLocation::Memory)
                            fail_type(p.variable.loc, "reference return parameters must be memory");
                        if (p.isPointer && !isOut && p.dataLocation == DataLocation::Storage
                            && f.visibility == Visibility::Public)
                            fail_type(p.variable.loc,
                                      "storage parameters are only allowed on private functions");
                    }
                };
                fixParams(f.inParams, false);
                fixParams(f.outParams, true);
                if (f.isConstructor && !f.outParams.empty())
                    fail_type(f.loc, "constructors cannot return values");
            }
        }
    }

    // -- function bodies -----------------------------------------------------

    void checkFunction(FunctionDeclaration& f)
    {
        currentFunc_ = &f;
        locals_.clear();
        for (const auto& p : f.inParams)
            locals_[p.variable.name] = p;
        for (const auto& p : f.outParams)
            locals_[p.variable.name] = p;
        // locals are function-scoped: execution binds every declared variable
        // at call entry, so names are visible before their declaration
        std::set<std::string> seen;
        for (auto d : collect_locals(f)) {
            const std::string& n = d.variable.name;
            if (n.empty() || n[0] != '$')
                checkName(n, d.variable.loc);
            if (locals_.count(n) && !seen.count(n))
                fail_type(d.variable.loc, "local " + n + " shadows a parameter");
            if (!seen.insert(n).second)
                fail_type(d.variable.loc, "duplicate local variable " + n);
            d.variable.type = resolveType(d.variable.type, d.variable.loc);
            d.isPointer = d.variable.type->isReference();
            if (d.variable.type->kind == TypeKind::Mapping)
                fail_type(d.variable.loc, "mappings cannot be local variables");
            if (d.isPointer && d.dataLocation == DataLocation::None)
                fail_type(d.variable.loc, "reference-type variable needs a data location");
            if (!d.isPointer && d.dataLocation != DataLocation::None)
                fail_type(d.variable.loc, "data location given for a value-type variable");
            if (d.isPointer && d.dataLocation == DataLocation::Memory)
                checkMemoryLegal(d.variable.type, d.variable.loc);
            locals_[n] = d;
        }
        f.body = checkStmts(f.body);
        currentFunc_ = nullptr;
    }

    StmtList checkStmts(const StmtList& in)
    {
        StmtList out;
        for (const auto& sp : in)
            out.push_back(checkStmt(*sp));
        return out;
    }

    StmtPtr checkStmt(const Stmt& stmt)
    {
        Stmt s = stmt;
        switch (s.kind) {
        case Stmt::Kind::WhileLoop:
        case Stmt::Kind::IfThenElse:
            annotate(s.condition, type_bool());
            requireType(s.condition, type_bool());
            s.body = checkStmts(s.body);
            s.elseBody = checkStmts(s.elseBody);
            break;
        case Stmt::Kind::Require:
        case Stmt::Kind::VAssume:
        case Stmt::Kind::VAssert:
            annotate(s.condition, type_bool());
            requireType(s.condition, type_bool());
            break;
        case Stmt::Kind::Revert:
            break;
        case Stmt::Kind::VariableDeclarationStatement: {
            // collected and validated up front; resolve the node's own copy
            LocalVariableDeclaration d = s.decl;
            d.variable.type = resolveType(d.variable.type, s.loc);
            d.isPointer = d.variable.type->isReference();
            s.decl = d;
            break;
        }
        case Stmt::Kind::Assignment: {
            annotate(s.lhs, nullptr);
            requireLValue(s.lhs);
            annotate(s.rhs, s.lhs->type);
            requireAssignable(s.lhs->type, s.rhs, s.loc);
            if (s.lhs->type->kind == TypeKind::Mapping)
                fail_type(s.loc, "mappings cannot be assigned");
            if (s.lhs->kind == Expr::Kind::Member && s.lhs->memberKind == MemberKind::ArrayLength) {
                if (s.lhs->base->type->fixedSize)
                    fail_type(s.loc, "cannot resize a fixed-size array");
            }
            break;
        }
        case Stmt::Kind::AllocMemory: {
            s.type = resolveType(s.type, s.loc);
            if (!s.type->isReference() || s.type->kind == TypeKind::Mapping)
                fail_type(s.loc, "new is only applicable to arrays and structs here");
            checkMemoryLegal(s.type, s.loc);
            annotate(s.lhs, s.type);
            requireLValue(s.lhs);
            if (!type_equal(s.lhs->type, s.type))
                fail_type(s.loc, "new " + type_to_string(s.type) + " assigned to "
                                     + type_to_string(s.lhs->type));
            if (s.lhs->location != LocationKind::MemoryPointer)
                fail_type(s.loc, "new allocates memory; the target must be a memory pointer");
            break;
        }
        case Stmt::Kind::Return: {
            if (!s.args.empty()) {
                const auto& outs = currentFunc_->outParams;
                if (s.args.size() != outs.size())
                    fail_type(s.loc, "return arity mismatch");
                for (size_t i = 0; i < s.args.size(); ++i) {
                    annotate(s.args[i], outs[i].variable.type);
                    requireAssignable(outs[i].variable.type, s.args[i], s.loc);
                }
            }
            break;
        }
        case Stmt::Kind::ContractCall: {
            annotate(s.target, nullptr);
            if (!s.target->type || s.target->type->kind != TypeKind::Contract)
                fail_type(s.loc, "function calls need a contract-typed target");
            const std::string& cname = s.target->type->name;
            const FunctionDeclaration* callee = findFunction(cname, s.funcName);
            if (!callee || callee->isConstructor)
                throw FrontendError("UnknownIdentifier", s.loc,
                                    "no function " + s.funcName + " in contract " + cname);
            bool internal = s.target->kind == Expr::Kind::Identifier && s.target->name == "this"
                && cname == current_->name;
            if (callee->visibility != Visibility::Public && !internal)
                throw FrontendError("VisibilityError", s.loc,
                                    "function " + cname + "." + s.funcName + " is not public");
            checkArgs(s.args, callee->inParams, s.loc);
            annotate(s.value, type_uint());
            requireType(s.value, type_uint());
            if (!s.callLhs.empty()) {
                if (s.callLhs.size() != callee->outParams.size())
                    fail_type(s.loc, "call result arity mismatch");
                for (size_t i = 0; i < s.callLhs.size(); ++i) {
                    annotate(s.callLhs[i], nullptr);
                    requireLValue(s.callLhs[i]);
                    if (!type_equal(s.callLhs[i]->type, callee->outParams[i].variable.type))
                        fail_type(s.loc, "call result type mismatch");
                }
            }
            s.type = type_contract(cname);
            break;
        }
        case Stmt::Kind::CreateContract: {
            if (s.type->kind != TypeKind::Contract || !contractNames_.count(s.type->name))
                fail_type(s.loc, "unknown contract in new");
            const FunctionDeclaration* ctor = findFunction(s.type->name, "constructor");
            std::vector<LocalVariableDeclaration> params;
            if (ctor)
                params = ctor->inParams;
            checkArgs(s.args, params, s.loc);
            annotate(s.value, type_uint());
            annotate(s.lhs, nullptr);
            requireLValue(s.lhs);
            if (!type_equal(s.lhs->type, s.type) && s.lhs->type->kind != TypeKind::Address)
                fail_type(s.loc, "new " + s.type->name + " assigned to "
                                     + type_to_string(s.lhs->type));
            break;
        }
        case Stmt::Kind::Transfer:
        case Stmt::Kind::Send: {
            annotate(s.source, nullptr);
            annotate(s.dest, nullptr);
            if (!s.dest->type->isAddressLike())
                fail_type(s.loc, "transfer destination must be an address");
            annotate(s.value, type_uint());
            requireType(s.value, type_uint());
            if (s.kind == Stmt::Kind::Send) {
                annotate(s.lhs, nullptr);
                requireLValue(s.lhs);
                requireType(s.lhs, type_bool());
            }
            break;
        }
        case Stmt::Kind::Call: {
            annotate(s.address, nullptr);
            if (!s.address->type->isAddressLike())
                fail_type(s.loc, "call target must be an address");
            annotate(s.value, type_uint());
            requireType(s.value, type_uint());
            annotate(s.lhs, nullptr);
            requireLValue(s.lhs);
            requireType(s.lhs, type_bool());
            break;
        }
        case Stmt::Kind::CexPrint: {
            annotate(s.arg, nullptr);
            if (!s.arg->type->isValue())
                fail_type(s.loc, "CexPrint takes a basic-typed argument");
            break;
        }
        case Stmt::Kind::Push: {
            annotate(s.array, nullptr);
            if (!s.array->type || s.array->type->kind != TypeKind::Array)
                fail_type(s.loc, "push needs an array");
            if (s.array->type->fixedSize)
                fail_type(s.loc, "cannot push to a fixed-size array");
            if (s.array->location == LocationKind::MemoryPointer)
                fail_type(s.loc, "cannot push to a memory array");
            annotate(s.arg, s.array->type->elem);
            requireAssignable(s.array->type->elem, s.arg, s.loc);
            break;
        }
        }
        return make_stmt(std::move(s));
    }

    const FunctionDeclaration* findFunction(const std::string& contract, const std::string& name)
    {
        for (const auto& c : program_.contracts)
            if (c.name == contract)
                for (const auto& f : c.functions)
                    if (f.name == name)
                        return &f;
        return nullptr;
    }

    void checkArgs(std::vector<ExprPtr>& args, const std::vector<LocalVariableDeclaration>& params,
                   SourceLoc loc)
    {
        if (args.size() != params.size())
            fail_type(loc, "argument count mismatch: expected " + std::to_string(params.size())
                               + ", got " + std::to_string(args.size()));
        for (size_t i = 0; i < args.size(); ++i) {
            annotate(args[i], params[i].variable.type);
            requireAssignable(params[i].variable.type, args[i], loc);
            if (params[i].dataLocation == DataLocation::Storage
                && args[i]->location == LocationKind::MemoryPointer)
                fail_type(loc, "cannot pass a memory value to a storage parameter");
        }
    }

    // -- expressions ---------------------------------------------------------

    void requireType(const ExprPtr& e, const TypePtr& t)
    {
        if (!type_equal(e->type, t))
            fail_type(e->loc, "expected " + type_to_string(t) + ", found " + type_to_string(e->type));
    }

    void requireAssignable(const TypePtr& target, const ExprPtr& e, SourceLoc loc)
    {
        if (type_equal(target, e->type))
            return;
        // contract values convert to plain addresses
        if (target->kind == TypeKind::Address && e->type && e->type->isAddressLike())
            return;
        fail_type(loc, "cannot assign " + type_to_string(e->type) + " to "
                           + type_to_string(target));
    }

    void requireLValue(const ExprPtr& e)
    {
        switch (e->kind) {
        case Expr::Kind::Identifier:
            if (e->idKind == IdKind::LocalVar || e->idKind == IdKind::StateVar)
                return;
            break;
        case Expr::Kind::Member:
            if (e->memberKind == MemberKind::StructField
                || e->memberKind == MemberKind::ArrayLength)
                return;
            break;
        case Expr::Kind::Index:
            return;
        default:
            break;
        }
        fail_type(e->loc, "expression is not assignable");
    }

    // Assigns e->type (and location for reference types). `expected` guides
    // literal typing only.
    void annotate(ExprPtr& e, TypePtr expected)
    {
        if (!e)
            throw InternalError("missing expression");
        switch (e->kind) {
        case Expr::Kind::NumberLit: {
            TypePtr t = type_uint();
            if (expected
                && (expected->isNumeric() || expected->isAddressLike()))
                t = expected;
            if (t->kind == TypeKind::Int && e->number > u256_sign_bit() - 1)
                fail_type(e->loc, "literal out of range for int");
            if (t->isAddressLike() && e->number > address_max())
                fail_type(e->loc, "literal out of range for address");
            e->type = t;
            return;
        }
        case Expr::Kind::BoolLit:
            e->type = type_bool();
            return;
        case Expr::Kind::Identifier: {
            const std::string& n = e->name;
            if (n == "this") {
                e->idKind = IdKind::This;
                e->type = type_contract(current_->name);
                return;
            }
            if (n == "msg") {
                e->idKind = IdKind::BuiltinMsg;
                return; // only legal as a member base; checked there
            }
            if (n == "tx") {
                e->idKind = IdKind::BuiltinTx;
                return;
            }
            if (n == "block") {
                e->idKind = IdKind::BuiltinBlock;
                return;
            }
            auto it = locals_.find(n);
            if (it != locals_.end()) {
                e->idKind = IdKind::LocalVar;
                e->type = it->second.variable.type;
                if (e->type->isReference())
                    e->location = it->second.dataLocation == DataLocation::Storage
                        ? LocationKind::StoragePointer
                        : LocationKind::MemoryPointer;
                return;
            }
            for (const auto& v : current_->variables) {
                if (v.name == n) {
                    e->idKind = IdKind::StateVar;
                    e->type = v.type;
                    if (v.type->isReference())
                        e->location = LocationKind::StorageReference;
                    return;
                }
            }
            if (enums_.count(n)) {
                e->idKind = IdKind::EnumTypeName;
                return;
            }
            throw FrontendError("UnknownIdentifier", e->loc, n);
        }
        case Expr::Kind::Member: {
            annotate(e->base, nullptr);
            const std::string& m = e->name;
            if (e->base->idKind == IdKind::EnumTypeName) {
                const EnumDecl* ed = enums_.at(e->base->name);
                for (size_t i = 0; i < ed->values.size(); ++i) {
                    if (ed->values[i] == m) {
                        e->memberKind = MemberKind::EnumValue;
                        e->enumValueIndex = (int)i;
                        e->type = type_enum(ed->name);
                        return;
                    }
                }
                fail_type(e->loc, "enum " + ed->name + " has no value " + m);
            }
            if (e->base->idKind == IdKind::BuiltinMsg) {
                if (m == "sender") {
                    e->memberKind = MemberKind::MsgSender;
                    e->type = type_address();
                    return;
                }
                if (m == "value") {
                    e->memberKind = MemberKind::MsgValue;
                    e->type = type_uint();
                    return;
                }
                fail_type(e->loc, "msg has no member " + m);
            }
            if (e->base->idKind == IdKind::BuiltinTx) {
                if (m == "origin") {
                    e->memberKind = MemberKind::TxOrigin;
                    e->type = type_address();
                    return;
                }
                fail_type(e->loc, "tx has no member " + m);
            }
            if (e->base->idKind == IdKind::BuiltinBlock) {
                if (m == "timestamp") {
                    e->memberKind = MemberKind::BlockTimestamp;
                    e->type = type_uint();
                    return;
                }
                fail_type(e->loc, "block has no member " + m);
            }
            const TypePtr& bt = e->base->type;
            if (!bt)
                fail_type(e->loc, "bad member access base");
            if (m == "length" && bt->kind == TypeKind::Array) {
                e->memberKind = MemberKind::ArrayLength;
                e->type = type_uint();
                return;
            }
            if (m == "balance" && bt->isAddressLike()) {
                e->memberKind = MemberKind::Balance;
                e->type = type_uint();
                return;
            }
            if (bt->kind == TypeKind::Struct) {
                const StructDecl* sd = structs_.at(bt->name);
                for (const auto& mem : sd->members) {
                    if (mem.name == m) {
                        e->memberKind = MemberKind::StructField;
                        e->type = mem.type;
                        refineElementLocation(e);
                        return;
                    }
                }
                fail_type(e->loc, "struct " + bt->name + " has no member " + m);
            }
            fail_type(e->loc, type_to_string(bt) + " has no member " + m);
        }
        case Expr::Kind::Index: {
            annotate(e->base, nullptr);
            const TypePtr& bt = e->base->type;
            if (!bt)
                fail_type(e->loc, "bad index base");
            if (bt->kind == TypeKind::Array) {
                annotate(e->index, type_uint());
                requireType(e->index, type_uint());
                e->type = bt->elem;
            } else if (bt->kind == TypeKind::Mapping) {
                annotate(e->index, bt->domain);
                requireAssignable(bt->domain, e->index, e->loc);
                e->type = bt->range;
            } else {
                fail_type(e->loc, "cannot index " + type_to_string(bt));
            }
            refineElementLocation(e);
            return;
        }
        case Expr::Kind::Unary: {
            if (e->name == "!") {
                annotate(e->base, type_bool());
                requireType(e->base, type_bool());
                e->type = type_bool();
                return;
            }
            if (e->name == "-") {
                annotate(e->base, type_int());
                requireType(e->base, type_int());
                e->type = type_int();
                return;
            }
            fail_type(e->loc, "bad unary operator " + e->name);
        }
        case Expr::Kind::Binary: {
            const std::string& op = e->name;
            if (op == "&&" || op == "||") {
                annotate(e->lhs, type_bool());
                annotate(e->rhs, type_bool());
                requireType(e->lhs, type_bool());
                requireType(e->rhs, type_bool());
                e->type = type_bool();
                return;
            }
            // give literals the other operand's type
            bool litL = e->lhs->kind == Expr::Kind::NumberLit;
            bool litR = e->rhs->kind == Expr::Kind::NumberLit;
            if (litL && !litR) {
                annotate(e->rhs, expected);
                annotate(e->lhs, e->rhs->type);
            } else if (litR && !litL) {
                annotate(e->lhs, expected);
                annotate(e->rhs, e->lhs->type);
            } else {
                annotate(e->lhs, expected);
                annotate(e->rhs, e->lhs->type);
            }
            const TypePtr& lt = e->lhs->type;
            const TypePtr& rt = e->rhs->type;
            if (op == "==" || op == "!=") {
                bool ok = type_equal(lt, rt)
                    || (lt && rt && lt->isAddressLike() && rt->isAddressLike());
                if (!ok || !lt || !lt->isValue())
                    fail_type(e->loc, "cannot compare " + type_to_string(lt) + " with "
                                          + type_to_string(rt));
                e->type = type_bool();
                return;
            }
            if (op == "<" || op == ">" || op == "<=" || op == ">=") {
                if (!lt || !lt->isNumeric() || !type_equal(lt, rt))
                    fail_type(e->loc, "ordering needs matching integer operands");
                e->type = type_bool();
                return;
            }
            // arithmetic
            if (!lt || !lt->isNumeric() || !type_equal(lt, rt))
                fail_type(e->loc, "arithmetic needs matching integer operands, got "
                                      + type_to_string(lt) + " and " + type_to_string(rt));
            e->type = lt;
            return;
        }
        case Expr::Kind::CallSuffix:
        case Expr::Kind::NewSuffix:
            fail_type(e->loc, "calls cannot be used as expressions");
        }
    }

    // location of a member/index element: memory stays memory, everything
    // else is a storage reference
    void refineElementLocation(ExprPtr& e)
    {
        if (!e->type || !e->type->isReference())
            return;
        if (e->base->location == LocationKind::MemoryPointer)
            e->location = LocationKind::MemoryPointer;
        else
            e->location = LocationKind::StorageReference;
    }
};

} // namespace

void type_check(Program& p)
{
    Checker(p).run();
}

void check_type_acyclicity(const Program& p)
{
    // edges between struct types, through arrays and mapping ranges/domains
    std::map<std::string, std::vector<std::string>> edges;
    std::function<void(const TypePtr&, std::vector<std::string>&)> refs =
        [&](const TypePtr& t, std::vector<std::string>& out) {
            switch (t->kind) {
            case TypeKind::Struct:
                out.push_back(t->name);
                break;
            case TypeKind::Array:
                refs(t->elem, out);
                break;
            case TypeKind::Mapping:
                refs(t->domain, out);
                refs(t->range, out);
                break;
            default:
                break;
            }
        };
    for (const auto& c : p.contracts) {
        for (const auto& s : c.structs) {
            auto& e = edges[s.name];
            for (const auto& m : s.members)
                refs(m.type, e);
        }
    }
    // DFS with an explicit path for cycle reporting
    std::map<std::string, int> state; // 0 = new, 1 = on path, 2 = done
    std::vector<std::string> path;
    std::function<void(const std::string&)> visit = [&](const std::string& n) {
        state[n] = 1;
        path.push_back(n);
        for (const auto& m : edges[n]) {
            if (state[m] == 1) {
                std::string cycle;
                auto it = std::find(path.begin(), path.end(), m);
                for (; it != path.end(); ++it)
                    cycle += *it + " -> ";
                cycle += m;
                throw FrontendError("RecursiveType", {}, cycle);
            }
            if (state[m] == 0)
                visit(m);
        }
        path.pop_back();
        state[n] = 2;
    };
    for (const auto& kv : edges)
        if (state[kv.first] == 0)
            visit(kv.first);
}

ast::Program load_program(const std::string& source, const ParseOptions& opts)
{
    Program p = parse_program(source, opts);
    type_check(p);
    check_type_acyclicity(p);
    return p;
}

} // namespace solidbmc::frontend
