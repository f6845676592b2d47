// solidbmc: bounded model checking toolchain for a Solidity subset
// Copyright 2026 The solidbmc Authors.
// SPDX-License-Identifier: Apache-2.0
#include "frontend/ast.hpp"

namespace solidbmc::ast {

namespace {
TypePtr make_simple(TypeKind k)
{
    auto t = std::make_shared<Type>();
    t->kind = k;
    return t;
}
} // namespace

TypePtr type_uint()
{
    static const TypePtr t = make_simple(TypeKind::UInt);
    return t;
}
TypePtr type_int()
{
    static const TypePtr t = make_simple(TypeKind::Int);
    return t;
}
TypePtr type_bool()
{
    static const TypePtr t = make_simple(TypeKind::Bool);
    return t;
}
TypePtr type_address()
{
    static const TypePtr t = make_simple(TypeKind::Address);
    return t;
}
TypePtr type_contract(const std::string& name)
{
    auto t = std::make_shared<Type>();
    t->kind = TypeKind::Contract;
    t->name = name;
    return t;
}
TypePtr type_array(TypePtr elem, std::optional<U256> fixedSize)
{
    auto t = std::make_shared<Type>();
    t->kind = TypeKind::Array;
    t->elem = std::move(elem);
    t->fixedSize = fixedSize;
    return t;
}
TypePtr type_mapping(TypePtr domain, TypePtr range)
{
    auto t = std::make_shared<Type>();
    t->kind = TypeKind::Mapping;
    t->domain = std::move(domain);
    t->range = std::move(range);
    return t;
}
TypePtr type_enum(const std::string& name)
{
    auto t = std::make_shared<Type>();
    t->kind = TypeKind::Enum;
    t->name = name;
    return t;
}
TypePtr type_struct(const std::string& name)
{
    auto t = std::make_shared<Type>();
    t->kind = TypeKind::Struct;
    t->name = name;
    return t;
}

bool type_equal(const TypePtr& a, const TypePtr& b)
{
    if (a == b)
        return true;
    if (!a || !b)
        return false;
    if (a->kind != b->kind)
        return false;
    switch (a->kind) {
    case TypeKind::UInt:
    case TypeKind::Int:
    case TypeKind::Bool:
    case TypeKind::Address:
        return true;
    case TypeKind::Contract:
    case TypeKind::Enum:
    case TypeKind::Struct:
        return a->name == b->name;
    case TypeKind::Array:
        return a->fixedSize == b->fixedSize && type_equal(a->elem, b->elem);
    case TypeKind::Mapping:
        return type_equal(a->domain, b->domain) && type_equal(a->range, b->range);
    }
    return false;
}

std::string type_to_string(const TypePtr& t)
{
    if (!t)
        return "<none>";
    switch (t->kind) {
    case TypeKind::UInt: return "uint";
    case TypeKind::Int: return "int";
    case TypeKind::Bool: return "bool";
    case TypeKind::Address: return "address";
    case TypeKind::Contract:
    case TypeKind::Enum:
    case TypeKind::Struct:
        return t->name;
    case TypeKind::Array:
        if (t->fixedSize)
            return type_to_string(t->elem) + "[" + u256_to_string(*t->fixedSize) + "]";
        return type_to_string(t->elem) + "[]";
    case TypeKind::Mapping:
        return "mapping(" + type_to_string(t->domain) + " => " + type_to_string(t->range) + ")";
    }
    return "<bad>";
}

const char* location_name(LocationKind k)
{
    switch (k) {
    case LocationKind::StorageReference: return "storage-reference";
    case LocationKind::StoragePointer: return "storage-pointer";
    case LocationKind::MemoryPointer: return "memory-pointer";
    }
    return "?";
}

ExprPtr Expr::ident(std::string n, SourceLoc loc)
{
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Identifier;
    e->name = std::move(n);
    e->loc = loc;
    return e;
}
ExprPtr Expr::member(ExprPtr base, std::string field, SourceLoc loc)
{
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Member;
    e->base = std::move(base);
    e->name = std::move(field);
    e->loc = loc;
    return e;
}
ExprPtr Expr::indexOf(ExprPtr base, ExprPtr idx, SourceLoc loc)
{
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Index;
    e->base = std::move(base);
    e->index = std::move(idx);
    e->loc = loc;
    return e;
}
ExprPtr Expr::num(U256 v, SourceLoc loc)
{
    auto e = std::make_shared<Expr>();
    e->kind = Kind::NumberLit;
    e->number = v;
    e->loc = loc;
    return e;
}
ExprPtr Expr::boolean(bool v, SourceLoc loc)
{
    auto e = std::make_shared<Expr>();
    e->kind = Kind::BoolLit;
    e->boolval = v;
    e->loc = loc;
    return e;
}
ExprPtr Expr::binary(std::string op, ExprPtr l, ExprPtr r, SourceLoc loc)
{
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Binary;
    e->name = std::move(op);
    e->lhs = std::move(l);
    e->rhs = std::move(r);
    e->loc = loc;
    return e;
}
ExprPtr Expr::unary(std::string op, ExprPtr operand, SourceLoc loc)
{
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Unary;
    e->name = std::move(op);
    e->base = std::move(operand);
    e->loc = loc;
    return e;
}

StmtPtr make_stmt(Stmt s)
{
    return std::make_shared<const Stmt>(std::move(s));
}

ProgramIndex::ProgramIndex(const Program& p)
    : program_(&p)
{
    for (const auto& c : p.contracts) {
        contracts_[c.name] = &c;
        for (const auto& e : c.enums) {
            enums_[e.name] = &e;
            owners_[e.name] = &c;
        }
        for (const auto& s : c.structs) {
            structs_[s.name] = &s;
            owners_[s.name] = &c;
        }
        for (const auto& f : c.functions)
            functions_[{c.name, f.name}] = &f;
        for (const auto& v : c.variables)
            stateVars_[{c.name, v.name}] = &v;
    }
}

const Contract* ProgramIndex::contract(const std::string& name) const
{
    auto it = contracts_.find(name);
    return it == contracts_.end() ? nullptr : it->second;
}
const EnumDecl* ProgramIndex::enumDecl(const std::string& name) const
{
    auto it = enums_.find(name);
    return it == enums_.end() ? nullptr : it->second;
}
const StructDecl* ProgramIndex::structDecl(const std::string& name) const
{
    auto it = structs_.find(name);
    return it == structs_.end() ? nullptr : it->second;
}
const Contract* ProgramIndex::ownerOf(const std::string& typeName) const
{
    auto it = owners_.find(typeName);
    return it == owners_.end() ? nullptr : it->second;
}
const FunctionDeclaration* ProgramIndex::function(const std::string& contract, const std::string& name) const
{
    auto it = functions_.find({contract, name});
    return it == functions_.end() ? nullptr : it->second;
}
const FunctionDeclaration* ProgramIndex::constructorOf(const std::string& contract) const
{
    const Contract* c = this->contract(contract);
    if (!c)
        return nullptr;
    for (const auto& f : c->functions)
        if (f.isConstructor)
            return &f;
    return nullptr;
}
std::vector<const FunctionDeclaration*> ProgramIndex::interfaceFunctions(const std::string& contract) const
{
    std::vector<const FunctionDeclaration*> out;
    const Contract* c = this->contract(contract);
    if (!c)
        return out;
    for (const auto& f : c->functions)
        if (!f.isConstructor && f.visibility == Visibility::Public)
            out.push_back(&f);
    return out;
}
const VariableDeclaration* ProgramIndex::stateVar(const std::string& contract, const std::string& name) const
{
    auto it = stateVars_.find({contract, name});
    return it == stateVars_.end() ? nullptr : it->second;
}

// ---------------------------------------------------------------------------
// Structural equality

bool expr_equal(const ExprPtr& a, const ExprPtr& b)
{
    if (a == b)
        return true;
    if (!a || !b)
        return false;
    if (a->kind != b->kind || a->name != b->name)
        return false;
    switch (a->kind) {
    case Expr::Kind::Identifier:
        return true;
    case Expr::Kind::Member:
    case Expr::Kind::Unary:
        return expr_equal(a->base, b->base);
    case Expr::Kind::Index:
        return expr_equal(a->base, b->base) && expr_equal(a->index, b->index);
    case Expr::Kind::NumberLit:
        return a->number == b->number;
    case Expr::Kind::BoolLit:
        return a->boolval == b->boolval;
    case Expr::Kind::Binary:
        return expr_equal(a->lhs, b->lhs) && expr_equal(a->rhs, b->rhs);
    case Expr::Kind::CallSuffix:
    case Expr::Kind::NewSuffix: {
        if (a->args.size() != b->args.size())
            return false;
        for (size_t i = 0; i < a->args.size(); ++i)
            if (!expr_equal(a->args[i], b->args[i]))
                return false;
        return expr_equal(a->base, b->base) && type_equal(a->newType, b->newType)
            && expr_equal(a->newLength, b->newLength);
    }
    }
    return false;
}

namespace {
bool stmts_equal(const StmtList& a, const StmtList& b)
{
    if (a.size() != b.size())
        return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (!stmt_equal(a[i], b[i]))
            return false;
    return true;
}

bool exprs_equal(const std::vector<ExprPtr>& a, const std::vector<ExprPtr>& b)
{
    if (a.size() != b.size())
        return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (!expr_equal(a[i], b[i]))
            return false;
    return true;
}

bool local_decl_equal(const LocalVariableDeclaration& a, const LocalVariableDeclaration& b)
{
    return a.isPointer == b.isPointer && a.dataLocation == b.dataLocation
        && a.variable.name == b.variable.name && type_equal(a.variable.type, b.variable.type);
}
} // namespace

bool stmt_equal(const StmtPtr& a, const StmtPtr& b)
{
    if (a == b)
        return true;
    if (!a || !b)
        return false;
    if (a->kind != b->kind)
        return false;
    return expr_equal(a->condition, b->condition) && stmts_equal(a->body, b->body)
        && stmts_equal(a->elseBody, b->elseBody) && local_decl_equal(a->decl, b->decl)
        && expr_equal(a->lhs, b->lhs) && expr_equal(a->rhs, b->rhs)
        && a->solidLength == b->solidLength && type_equal(a->type, b->type)
        && exprs_equal(a->callLhs, b->callLhs) && a->funcName == b->funcName
        && exprs_equal(a->args, b->args) && expr_equal(a->target, b->target)
        && expr_equal(a->value, b->value) && expr_equal(a->source, b->source)
        && expr_equal(a->dest, b->dest) && expr_equal(a->address, b->address)
        && expr_equal(a->arg, b->arg) && expr_equal(a->array, b->array);
}

bool program_equal(const Program& a, const Program& b)
{
    if (a.contracts.size() != b.contracts.size())
        return false;
    for (size_t ci = 0; ci < a.contracts.size(); ++ci) {
        const Contract& x = a.contracts[ci];
        const Contract& y = b.contracts[ci];
        if (x.name != y.name || x.enums.size() != y.enums.size()
            || x.structs.size() != y.structs.size() || x.variables.size() != y.variables.size()
            || x.functions.size() != y.functions.size())
            return false;
        for (size_t i = 0; i < x.enums.size(); ++i)
            if (x.enums[i].name != y.enums[i].name || x.enums[i].values != y.enums[i].values)
                return false;
        for (size_t i = 0; i < x.structs.size(); ++i) {
            if (x.structs[i].name != y.structs[i].name
                || x.structs[i].members.size() != y.structs[i].members.size())
                return false;
            for (size_t j = 0; j < x.structs[i].members.size(); ++j)
                if (x.structs[i].members[j].name != y.structs[i].members[j].name
                    || !type_equal(x.structs[i].members[j].type, y.structs[i].members[j].type))
                    return false;
        }
        for (size_t i = 0; i < x.variables.size(); ++i)
            if (x.variables[i].name != y.variables[i].name
                || !type_equal(x.variables[i].type, y.variables[i].type))
                return false;
        for (size_t i = 0; i < x.functions.size(); ++i) {
            const FunctionDeclaration& f = x.functions[i];
            const FunctionDeclaration& g = y.functions[i];
            if (f.name != g.name || f.visibility != g.visibility || f.isPayable != g.isPayable
                || f.isConstructor != g.isConstructor
                || f.inParams.size() != g.inParams.size()
                || f.outParams.size() != g.outParams.size())
                return false;
            for (size_t j = 0; j < f.inParams.size(); ++j)
                if (!local_decl_equal(f.inParams[j], g.inParams[j]))
                    return false;
            for (size_t j = 0; j < f.outParams.size(); ++j)
                if (!local_decl_equal(f.outParams[j], g.outParams[j]))
                    return false;
            if (!stmts_equal(f.body, g.body))
                return false;
        }
    }
    return true;
}

} // namespace solidbmc::ast
