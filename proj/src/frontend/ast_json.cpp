// solidbmc: bounded model checking toolchain for a Solidity subset
// Copyright 2026 The solidbmc Authors.
// SPDX-License-Identifier: Apache-2.0
#include "frontend/ast_json.hpp"

namespace solidbmc::frontend {

using namespace ast;
using nlohmann::json;

namespace {

json loc_json(SourceLoc loc)
{
    if (!loc.valid())
        return nullptr;
    return json{{"line", loc.line}, {"column", loc.column}};
}

const char* stmt_kind_name(Stmt::Kind k)
{
    switch (k) {
    case Stmt::Kind::WhileLoop: return "WhileLoop";
    case Stmt::Kind::IfThenElse: return "IfThenElse";
    case Stmt::Kind::VariableDeclarationStatement: return "VariableDeclarationStatement";
    case Stmt::Kind::Assignment: return "Assignment";
    case Stmt::Kind::AllocMemory: return "AllocMemory";
    case Stmt::Kind::Revert: return "Revert";
    case Stmt::Kind::Require: return "Require";
    case Stmt::Kind::Return: return "Return";
    case Stmt::Kind::ContractCall: return "ContractCall";
    case Stmt::Kind::CreateContract: return "CreateContract";
    case Stmt::Kind::Transfer: return "Transfer";
    case Stmt::Kind::Send: return "Send";
    case Stmt::Kind::Call: return "Call";
    case Stmt::Kind::VAssume: return "VAssume";
    case Stmt::Kind::VAssert: return "VAssert";
    case Stmt::Kind::CexPrint: return "CexPrint";
    case Stmt::Kind::Push: return "Push";
    }
    return "?";
}

json expr_json(const ExprPtr& e)
{
    if (!e)
        return nullptr;
    json j;
    j["loc"] = loc_json(e->loc);
    if (e->type)
        j["type"] = type_to_string(e->type);
    if (e->location)
        j["location"] = location_name(*e->location);
    switch (e->kind) {
    case Expr::Kind::Identifier:
        j["kind"] = "Identifier";
        j["name"] = e->name;
        break;
    case Expr::Kind::Member:
        j["kind"] = "Member";
        j["member"] = e->name;
        j["base"] = expr_json(e->base);
        break;
    case Expr::Kind::Index:
        j["kind"] = "Index";
        j["base"] = expr_json(e->base);
        j["index"] = expr_json(e->index);
        break;
    case Expr::Kind::NumberLit:
        j["kind"] = "Number";
        j["value"] = u256_to_string(e->number);
        break;
    case Expr::Kind::BoolLit:
        j["kind"] = "Bool";
        j["value"] = e->boolval;
        break;
    case Expr::Kind::Binary:
        j["kind"] = "Binary";
        j["op"] = e->name;
        j["lhs"] = expr_json(e->lhs);
        j["rhs"] = expr_json(e->rhs);
        break;
    case Expr::Kind::Unary:
        j["kind"] = "Unary";
        j["op"] = e->name;
        j["operand"] = expr_json(e->base);
        break;
    default:
        j["kind"] = "Unresolved";
        break;
    }
    return j;
}

json local_decl_json(const LocalVariableDeclaration& d)
{
    json j;
    j["name"] = d.variable.name;
    j["type"] = type_to_string(d.variable.type);
    j["isPointer"] = d.isPointer;
    j["dataLocation"] = d.dataLocation == DataLocation::Memory ? "memory"
        : d.dataLocation == DataLocation::Storage                ? "storage"
                                                                 : "default";
    return j;
}

json stmt_json(const StmtPtr& sp)
{
    const Stmt& s = *sp;
    json j;
    j["kind"] = stmt_kind_name(s.kind);
    j["loc"] = loc_json(s.loc);
    auto add = [&](const char* key, const json& v) {
        if (!v.is_null())
            j[key] = v;
    };
    add("condition", expr_json(s.condition));
    if (!s.body.empty()) {
        json b = json::array();
        for (const auto& st : s.body)
            b.push_back(stmt_json(st));
        j["body"] = b;
    }
    if (!s.elseBody.empty()) {
        json b = json::array();
        for (const auto& st : s.elseBody)
            b.push_back(stmt_json(st));
        j["elseBody"] = b;
    }
    if (s.kind == Stmt::Kind::VariableDeclarationStatement)
        j["variable"] = local_decl_json(s.decl);
    add("lhs", expr_json(s.lhs));
    add("rhs", expr_json(s.rhs));
    if (s.solidLength)
        j["solidLength"] = true;
    if (s.type)
        j["type"] = type_to_string(s.type);
    if (!s.callLhs.empty()) {
        json v = json::array();
        for (const auto& e : s.callLhs)
            v.push_back(expr_json(e));
        j["callLhs"] = v;
    }
    if (!s.funcName.empty())
        j["funcName"] = s.funcName;
    if (!s.args.empty()) {
        json v = json::array();
        for (const auto& e : s.args)
            v.push_back(expr_json(e));
        j["args"] = v;
    }
    add("target", expr_json(s.target));
    add("value", expr_json(s.value));
    add("source", expr_json(s.source));
    add("dest", expr_json(s.dest));
    add("address", expr_json(s.address));
    add("arg", expr_json(s.arg));
    add("array", expr_json(s.array));
    return j;
}

} // namespace

json ast_to_json(const Program& p)
{
    json out;
    out["kind"] = "Program";
    json contracts = json::array();
    for (const auto& c : p.contracts) {
        json jc;
        jc["kind"] = "Contract";
        jc["name"] = c.name;
        jc["loc"] = loc_json(c.loc);
        json enums = json::array();
        for (const auto& e : c.enums)
            enums.push_back(json{{"kind", "Enum"}, {"name", e.name}, {"values", e.values}});
        jc["enums"] = enums;
        json structs = json::array();
        for (const auto& s : c.structs) {
            json members = json::array();
            for (const auto& m : s.members)
                members.push_back(json{{"name", m.name}, {"type", type_to_string(m.type)}});
            structs.push_back(json{{"kind", "Struct"}, {"name", s.name}, {"members", members}});
        }
        jc["structs"] = structs;
        json vars = json::array();
        for (const auto& v : c.variables)
            vars.push_back(json{{"name", v.name}, {"type", type_to_string(v.type)}});
        jc["variables"] = vars;
        json funcs = json::array();
        for (const auto& f : c.functions) {
            json jf;
            jf["kind"] = f.isConstructor ? "Constructor" : "Function";
            jf["name"] = f.name;
            jf["visibility"] = f.visibility == Visibility::Public ? "public" : "private";
            jf["payable"] = f.isPayable;
            json ins = json::array(), outs = json::array();
            for (const auto& d : f.inParams)
                ins.push_back(local_decl_json(d));
            for (const auto& d : f.outParams)
                outs.push_back(local_decl_json(d));
            jf["inParams"] = ins;
            jf["outParams"] = outs;
            json body = json::array();
            for (const auto& st : f.body)
                body.push_back(stmt_json(st));
            jf["body"] = body;
            funcs.push_back(jf);
        }
        jc["functions"] = funcs;
        contracts.push_back(jc);
    }
    out["contracts"] = contracts;
    return out;
}

} // namespace solidbmc::frontend
