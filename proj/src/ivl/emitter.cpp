// solidbmc: bounded model checking toolchain for a Solidity subset
// Copyright 2026 The solidbmc Authors.
// SPDX-License-Identifier: Apache-2.0
#include "ivl/emitter.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace solidbmc::ivl {

using namespace ast;
using explorer::HarnessConfig;

std::string type_tag(const TypePtr& t)
{
    switch (t->kind) {
    case TypeKind::UInt: return "uint";
    case TypeKind::Int: return "int_";
    case TypeKind::Bool: return "bool_";
    case TypeKind::Address:
    case TypeKind::Contract:
        return "address";
    case TypeKind::Enum:
    case TypeKind::Struct:
        return t->name;
    case TypeKind::Array:
        return type_tag(t->elem) + "[]";
    case TypeKind::Mapping:
        return "Mapping_" + type_tag(t->domain) + "_" + type_tag(t->range);
    }
    return "?";
}

namespace {

const char* kModulus =
    "115792089237316195423570985008687907853269984665640564039457584007913129639936";
const char* kHalf =
    "57896044618658097711785492504343953926634992332820282019728792003956564819968";

// the reference representation underlying a scalar value
std::string scalar_payload_paper(const TypePtr& t)
{
    switch (t->kind) {
    case TypeKind::UInt: return "UInt";
    case TypeKind::Int: return "Int";
    case TypeKind::Bool: return "bool";
    case TypeKind::Address:
    case TypeKind::Contract: return "Address";
    case TypeKind::Enum: return "enum(" + t->name + ")";
    default: return "Ref";
    }
}

bool is_bool(const TypePtr& t) { return t && t->kind == TypeKind::Bool; }

// Whether allocating this type needs the quantified allocate form anywhere
bool needs_quantified_alloc(const TypePtr& t, const ProgramIndex& idx, std::set<std::string>& seen)
{
    switch (t->kind) {
    case TypeKind::Array:
        return t->elem->isReference();
    case TypeKind::Mapping:
        return t->range->isReference();
    case TypeKind::Struct: {
        if (!seen.insert(t->name).second)
            return false;
        const StructDecl* sd = idx.structDecl(t->name);
        for (const auto& m : sd->members)
            if (m.type->isReference() && needs_quantified_alloc(m.type, idx, seen))
                return true;
        return false;
    }
    default:
        return false;
    }
}

struct QuantVar {
    std::string name;
    std::string type; // rendered
};

std::string vars_list(const std::vector<QuantVar>& vars, bool primed = false)
{
    std::string out;
    for (size_t i = 0; i < vars.size(); ++i) {
        if (i)
            out += ", ";
        out += vars[i].name + (primed ? "'" : "") + " : " + vars[i].type;
    }
    return out;
}

std::string subst_primed(const std::string& expr, const std::vector<QuantVar>& vars)
{
    // replace whole-identifier occurrences of each var with its primed twin
    std::string out;
    size_t i = 0;
    auto isIdent = [](char c) { return std::isalnum((unsigned char)c) || c == '_' || c == '$' || c == '\''; };
    while (i < expr.size()) {
        if (isIdent(expr[i]) && (i == 0 || !isIdent(expr[i - 1]))) {
            size_t j = i;
            while (j < expr.size() && isIdent(expr[j]))
                ++j;
            std::string word = expr.substr(i, j - i);
            for (const auto& v : vars)
                if (word == v.name) {
                    word += "'";
                    break;
                }
            out += word;
            i = j;
        } else {
            out += expr[i++];
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Mode-aware access paths

struct Paths {
    bool desugar = false;

    // the reference-map handle: either memory or one address's storage
    struct Map {
        bool memory = true;
        std::string addr; // storage owner (already rendered)
    };

    std::string cellType(const Map& m, const std::string& ref) const
    {
        if (!desugar)
            return base(m) + "[" + ref + "].type";
        return m.memory ? "m_type[" + ref + "]" : "s_storage_type[" + m.addr + "][" + ref + "]";
    }

    enum class Field { Scalar, Length, Data, MapKey, Member };

    std::string cellValue(const Map& m, const std::string& ref, Field f,
                          const std::string& arg = "", bool boolish = false) const
    {
        if (!desugar) {
            std::string v = base(m) + "[" + ref + "].value";
            switch (f) {
            case Field::Scalar: return v;
            case Field::Length: return v + ".length";
            case Field::Data: return v + ".data[" + arg + "]";
            case Field::MapKey: return v + "[" + arg + "]";
            case Field::Member: return v + "." + arg;
            }
        }
        std::string prefix = m.memory ? "m_value" : "s_storage_value";
        std::string suffix = boolish ? "_bool" : "";
        std::string key = m.memory ? "[" + ref + "]" : "[" + m.addr + "][" + ref + "]";
        switch (f) {
        case Field::Scalar: return prefix + suffix + key;
        case Field::Length: return prefix + "_length" + key;
        case Field::Data: return prefix + "_data" + suffix + key + "[" + arg + "]";
        case Field::MapKey: return prefix + "_map" + suffix + key + "[" + arg + "]";
        case Field::Member: return prefix + "_" + arg + key;
        }
        return "?";
    }

    std::string addrType(const std::string& a) const
    {
        return desugar ? "s_type[" + a + "]" : "s[" + a + "].type";
    }
    std::string addrBalance(const std::string& a) const
    {
        return desugar ? "s_balance[" + a + "]" : "s[" + a + "].balance";
    }
    std::string addrMember(const std::string& a, const std::string& mid) const
    {
        return desugar ? "s_members[" + a + "][" + mid + "]" : "s[" + a + "].members[" + mid + "]";
    }
    std::string blockTime() const { return desugar ? "b_time" : "b.time"; }
    std::string txOrigin() const { return desugar ? "tx_origin" : "tx.origin"; }

private:
    std::string base(const Map& m) const { return m.memory ? "m" : "s[" + m.addr + "].storage"; }
};

// ---------------------------------------------------------------------------
// The emitter

struct Emitter {
    const Program& program;
    ProgramIndex idx;
    const HarnessConfig& cfg;
    EmitOptions opts;
    Paths paths;

    std::vector<TypePtr> cellTypes;          // deduped by tag, emission order
    std::set<std::string> cellTags;
    std::vector<std::pair<std::string, std::string>> refValueFields; // name -> payload
    std::set<std::string> refValueFieldNames;
    std::vector<std::pair<std::string, TypePtr>> cexPrints; // label -> arg type
    std::set<std::string> globalNames;

    // per-procedure state
    std::ostringstream body;
    std::set<std::string> auxNeeded;
    int freshCounter = 0;
    int dropCounter = 0;
    std::vector<std::string> extraLocals; // rendered declarations
    const Contract* curContract = nullptr;

    Emitter(const Program& p, const HarnessConfig& c, const EmitOptions& o)
        : program(p)
        , idx(p)
        , cfg(c)
        , opts(o)
    {
        paths.desugar = o.desugar;
        collect();
    }

    // -- collection ---------------------------------------------------------

    void addCellType(const TypePtr& t)
    {
        std::string tag = type_tag(t);
        if (!cellTags.insert(tag).second)
            return;
        cellTypes.push_back(t);
        switch (t->kind) {
        case TypeKind::Struct: {
            const StructDecl* sd = idx.structDecl(t->name);
            for (const auto& m : sd->members) {
                std::string payload = m.type->isReference() ? "Ref" : scalar_payload_paper(m.type);
                if (refValueFieldNames.insert(m.name).second)
                    refValueFields.push_back({m.name, payload});
                if (m.type->isReference())
                    addCellType(m.type);
            }
            break;
        }
        case TypeKind::Array: {
            if (refValueFieldNames.insert("length").second)
                refValueFields.push_back({"length", "UInt"});
            std::string payload = t->elem->isReference() ? "Ref" : scalar_payload_paper(t->elem);
            if (refValueFieldNames.insert("data").second)
                refValueFields.push_back({"data", "[UInt] " + payload});
            if (t->elem->isReference())
                addCellType(t->elem);
            break;
        }
        case TypeKind::Mapping:
            if (t->range->isReference())
                addCellType(t->range);
            break;
        default:
            break;
        }
    }

    void collectStmtTypes(const StmtList& stmts)
    {
        for (const auto& s : stmts) {
            if (s->kind == Stmt::Kind::AllocMemory)
                addCellType(s->type);
            if (s->kind == Stmt::Kind::CexPrint) {
                bool known = false;
                for (const auto& [n, t] : cexPrints)
                    if (n == s->funcName)
                        known = true;
                if (!known)
                    cexPrints.push_back({s->funcName, s->arg->type});
            }
            collectStmtTypes(s->body);
            collectStmtTypes(s->elseBody);
        }
    }

    void collect()
    {
        for (const auto& c : program.contracts) {
            for (const auto& v : c.variables)
                addCellType(v.type);
            for (const auto& f : c.functions) {
                for (const auto& p : f.inParams)
                    if (p.variable.type->isReference())
                        addCellType(p.variable.type);
                for (const auto& p : f.outParams)
                    if (p.variable.type->isReference())
                        addCellType(p.variable.type);
                for (const auto& d : frontend_locals(f))
                    if (d.variable.type->isReference())
                        addCellType(d.variable.type);
                collectStmtTypes(f.body);
            }
        }
    }

    static std::vector<LocalVariableDeclaration> frontend_locals(const FunctionDeclaration& f);

    // -- small renderers ------------------------------------------------------

    std::string localType(const TypePtr& t) const
    {
        if (t->isReference())
            return opts.desugar ? "int" : "Ref";
        if (opts.desugar)
            return is_bool(t) ? "bool" : "int";
        switch (t->kind) {
        case TypeKind::UInt: return "UInt";
        case TypeKind::Int: return "Int";
        case TypeKind::Bool: return "bool";
        case TypeKind::Address:
        case TypeKind::Contract: return "Address";
        case TypeKind::Enum: return "enum(" + t->name + ")";
        default: return "?";
        }
    }

    std::string refTypeName() const { return opts.desugar ? "int" : "Ref"; }
    std::string addressTypeName() const { return opts.desugar ? "int" : "Address"; }

    std::string enumValue(const std::string& enumName, uint32_t index) const
    {
        const EnumDecl* e = idx.enumDecl(enumName);
        return enumName + "_" + e->values.at(index);
    }

    std::string defaultScalarText(const TypePtr& t) const
    {
        switch (t->kind) {
        case TypeKind::Bool: return "false";
        case TypeKind::Enum: return enumValue(t->name, 0);
        default: return "0";
        }
    }

    std::string memberId(const std::string& contract, const std::string& member) const
    {
        return contract + "_" + member;
    }

    std::string procName(const std::string& contract, const FunctionDeclaration& f) const
    {
        return contract + "_" + (f.isConstructor ? "constructor" : f.name);
    }

    std::string quantVarType(const TypePtr& domain) const
    {
        if (opts.desugar)
            return is_bool(domain) ? "bool" : "int";
        // array indices quantify over int
        if (!domain)
            return "int";
        switch (domain->kind) {
        case TypeKind::Bool: return "bool";
        case TypeKind::Enum: return "enum(" + domain->name + ")";
        case TypeKind::Address:
        case TypeKind::Contract: return "Address";
        default: return "int";
        }
    }

    // -- expression translation ------------------------------------------------

    // the cell holding a reference-typed expression, as (map, ref-string)
    std::pair<Paths::Map, std::string> cellOf(const ExprPtr& e)
    {
        Paths::Map mem{true, ""};
        Paths::Map sto{false, "this"};
        switch (e->kind) {
        case Expr::Kind::Identifier:
            if (e->idKind == IdKind::StateVar)
                return {sto, paths.addrMember("this", memberId(curContract->name, e->name))};
            return {e->location == LocationKind::MemoryPointer ? mem : sto, e->name};
        case Expr::Kind::Member: {
            auto [bm, bref] = cellOf(e->base);
            std::string refExpr = paths.cellValue(bm, bref, Paths::Field::Member, e->name);
            return {bm, refExpr};
        }
        case Expr::Kind::Index: {
            auto [bm, bref] = cellOf(e->base);
            const TypePtr& bt = e->base->type;
            std::string key = translate(e->index, 0);
            Paths::Field f = bt->kind == TypeKind::Array ? Paths::Field::Data : Paths::Field::MapKey;
            return {bm, paths.cellValue(bm, bref, f, key)};
        }
        default:
            throw InternalError("not a reference expression");
        }
    }

    // scalar slot (readable and assignable) for a value-typed access path
    std::string scalarSlot(const ExprPtr& e)
    {
        switch (e->kind) {
        case Expr::Kind::Identifier: {
            if (e->idKind == IdKind::StateVar) {
                Paths::Map sto{false, "this"};
                std::string ref = paths.addrMember("this", memberId(curContract->name, e->name));
                return paths.cellValue(sto, ref, Paths::Field::Scalar, "", is_bool(e->type));
            }
            return e->name; // local
        }
        case Expr::Kind::Member: {
            if (e->memberKind == MemberKind::ArrayLength) {
                auto [m, ref] = cellOf(e->base);
                return paths.cellValue(m, ref, Paths::Field::Length);
            }
            auto [m, ref] = cellOf(e->base);
            return paths.cellValue(m, ref, Paths::Field::Member, e->name, is_bool(e->type));
        }
        case Expr::Kind::Index: {
            auto [m, ref] = cellOf(e->base);
            const TypePtr& bt = e->base->type;
            std::string key = translate(e->index, 0);
            Paths::Field f = bt->kind == TypeKind::Array ? Paths::Field::Data : Paths::Field::MapKey;
            return paths.cellValue(m, ref, f, key, is_bool(e->type));
        }
        default:
            throw InternalError("not a scalar slot");
        }
    }

    static int precOf(const std::string& op)
    {
        if (op == "||") return 1;
        if (op == "&&") return 2;
        if (op == "==" || op == "!=" || op == "<" || op == ">" || op == "<=" || op == ">=")
            return 3;
        if (op == "+" || op == "-") return 4;
        return 5;
    }

    std::string translate(const ExprPtr& e, int minPrec)
    {
        switch (e->kind) {
        case Expr::Kind::NumberLit:
            return u256_to_string(e->number);
        case Expr::Kind::BoolLit:
            return e->boolval ? "true" : "false";
        case Expr::Kind::Identifier:
            if (e->idKind == IdKind::This)
                return "this";
            if (e->idKind == IdKind::StateVar || e->idKind == IdKind::LocalVar) {
                if (e->type->isReference() && e->idKind == IdKind::StateVar)
                    return refOf(e);
                return scalarSlot(e);
            }
            return e->name;
        case Expr::Kind::Member:
            switch (e->memberKind) {
            case MemberKind::MsgSender: return "msg_sender";
            case MemberKind::MsgValue: return "msg_value";
            case MemberKind::TxOrigin: return paths.txOrigin();
            case MemberKind::BlockTimestamp: return paths.blockTime();
            case MemberKind::EnumValue: return enumValue(e->type->name, (uint32_t)e->enumValueIndex);
            case MemberKind::Balance:
                return paths.addrBalance(translate(e->base, 6));
            case MemberKind::ArrayLength:
                return scalarSlot(e);
            case MemberKind::StructField:
                return e->type->isReference() ? refOf(e) : scalarSlot(e);
            default:
                throw InternalError("untranslatable member");
            }
        case Expr::Kind::Index:
            return e->type->isReference() ? refOf(e) : scalarSlot(e);
        case Expr::Kind::Unary: {
            if (e->name == "!")
                return "!" + translate(e->base, 6);
            // signed negation with wrap-around
            return wrapInt("(0 - " + translate(e->base, 0) + ")");
        }
        case Expr::Kind::Binary: {
            const std::string& op = e->name;
            if (op == "&&" || op == "||") {
                int p = precOf(op);
                std::string s = translate(e->lhs, p) + " " + op + " " + translate(e->rhs, p + 1);
                return p < minPrec ? "(" + s + ")" : s;
            }
            const TypePtr& ot = e->lhs->type;
            if (op == "==" || op == "!=" || op == "<" || op == ">" || op == "<=" || op == ">=") {
                std::string s = translate(e->lhs, 4) + " " + op + " " + translate(e->rhs, 4);
                return 3 < minPrec ? "(" + s + ")" : s;
            }
            bool signedOp = ot && ot->kind == TypeKind::Int;
            std::string a = translate(e->lhs, 0);
            std::string b = translate(e->rhs, 0);
            if (op == "+" || op == "-" || op == "*") {
                std::string raw = "(" + a + " " + op + " " + b + ")";
                return signedOp ? wrapInt(raw) : "(" + raw + " mod " + kModulus + ")";
            }
            if (op == "/") {
                if (!signedOp)
                    return "(" + a + " div " + b + ")";
                return wrapInt(truncDiv(a, b));
            }
            if (op == "%") {
                if (!signedOp)
                    return "(" + a + " mod " + b + ")";
                // remainder takes the dividend's sign
                return "(if " + a + " >= 0 then (" + absOf(a) + " mod " + absOf(b)
                    + ") else (0 - (" + absOf(a) + " mod " + absOf(b) + ")))";
            }
            throw InternalError("bad operator " + op);
        }
        default:
            throw InternalError("untranslatable expression");
        }
    }

    // the reference value of a reference-typed expression
    std::string refOf(const ExprPtr& e)
    {
        switch (e->kind) {
        case Expr::Kind::Identifier:
            if (e->idKind == IdKind::StateVar)
                return paths.addrMember("this", memberId(curContract->name, e->name));
            return e->name;
        case Expr::Kind::Member: {
            auto [m, ref] = cellOf(e->base);
            return paths.cellValue(m, ref, Paths::Field::Member, e->name);
        }
        case Expr::Kind::Index: {
            auto [m, ref] = cellOf(e->base);
            const TypePtr& bt = e->base->type;
            std::string key = translate(e->index, 0);
            Paths::Field f = bt->kind == TypeKind::Array ? Paths::Field::Data : Paths::Field::MapKey;
            return paths.cellValue(m, ref, f, key);
        }
        default:
            throw InternalError("no reference for expression");
        }
    }

    std::string wrapInt(const std::string& raw)
    {
        return "((((" + raw + ") + " + kHalf + ") mod " + kModulus + ") - " + kHalf + ")";
    }
    std::string absOf(const std::string& x)
    {
        return "(if " + x + " >= 0 then " + x + " else (0 - " + x + "))";
    }
    std::string truncDiv(const std::string& a, const std::string& b)
    {
        return "(if (" + a + " >= 0) == (" + b + " >= 0) then (" + absOf(a) + " div " + absOf(b)
            + ") else (0 - (" + absOf(a) + " div " + absOf(b) + ")))";
    }

    // -- allocation / initialisation templates -----------------------------------

    // allocate(refMap, refExp, T, vars)
    void emitAllocate(std::ostringstream& os, const std::string& ind, const Paths::Map& map,
                      const std::string& refExp, const TypePtr& t,
                      const std::vector<QuantVar>& vars)
    {
        if (vars.empty()) {
            os << ind << "assume " << paths.cellType(map, refExp) << " == None;\n";
            os << ind << paths.cellType(map, refExp) << " := " << type_tag(t) << ";\n";
            return;
        }
        std::string vl = vars_list(vars);
        os << ind << "assume (forall " << vl << " :: " << paths.cellType(map, refExp)
           << " == None);\n";
        // distinct quantifications give distinct references
        std::string diff;
        for (size_t i = 0; i < vars.size(); ++i) {
            if (i)
                diff += " || ";
            diff += vars[i].name + " != " + vars[i].name + "'";
        }
        os << ind << "assume (forall " << vl << ", " << vars_list(vars, true) << " :: (" << diff
           << ") ==> " << refExp << " != " << subst_primed(refExp, vars) << ");\n";
        std::string pre = map.memory ? "preM" : "preS";
        auxNeeded.insert(pre);
        if (opts.desugar) {
            emitMapSnapshot(os, ind, map, pre);
        } else {
            os << ind << pre << " := " << (map.memory ? "m" : "s[" + map.addr + "].storage")
               << ";\n";
            os << ind << "havoc " << (map.memory ? "m" : "s[" + map.addr + "].storage") << ";\n";
            std::string rv = "r";
            os << ind << "assume (forall r : Ref :: " << pre << "[r].type != None ==> " << pre
               << "[r] == " << (map.memory ? "m" : "s[" + map.addr + "].storage") << "[r]);\n";
            (void)rv;
        }
        os << ind << "assume (forall " << vl << " :: " << paths.cellType(map, refExp) << " == "
           << type_tag(t) << ");\n";
    }

    struct CellField {
        std::string name; // suffix after m_/s_storage_
        bool nested;      // carries one more [int] key
        bool boolish;
    };

    std::vector<CellField> cellFields() const
    {
        std::vector<CellField> out{
            {"type", false, false},        {"value", false, false},
            {"value_bool", false, true},   {"value_length", false, false},
            {"value_data", true, false},   {"value_data_bool", true, true},
            {"value_map", true, false},    {"value_map_bool", true, true},
        };
        for (const auto& [n, payload] : refValueFields)
            if (n != "length" && n != "data")
                out.push_back({"value_" + n, false, payload == "bool"});
        return out;
    }

    // the desugared counterpart of `preX := map; havoc map; frame`
    void emitMapSnapshot(std::ostringstream& os, const std::string& ind, const Paths::Map& map,
                         const std::string& pre)
    {
        std::string owner = map.memory ? "" : "[" + map.addr + "]";
        std::string mapPrefix = map.memory ? "m_" : "s_storage_";
        for (const auto& f : cellFields()) {
            os << ind << pre << "_" << f.name << " := " << mapPrefix << f.name << ";\n";
            os << ind << "havoc " << mapPrefix << f.name << ";\n";
        }
        auto fieldEq = [&](const CellField& f, const std::string& at) {
            std::string cur = mapPrefix + f.name + at;
            std::string old = pre + "_" + f.name + at;
            if (f.nested)
                return "(forall k : int :: " + cur + "[k] == " + old + "[k])";
            return cur + " == " + old;
        };
        if (map.memory) {
            os << ind << "assume (forall r : int :: " << pre << "_type[r] != None ==> (";
            bool first = true;
            for (const auto& f : cellFields()) {
                os << (first ? "" : " && ") << fieldEq(f, "[r]");
                first = false;
            }
            os << "));\n";
        } else {
            // other addresses keep their whole storage
            os << ind << "assume (forall a : int, r : int :: a != " << map.addr << " ==> (";
            bool first = true;
            for (const auto& f : cellFields()) {
                os << (first ? "" : " && ") << fieldEq(f, "[a][r]");
                first = false;
            }
            os << "));\n";
            os << ind << "assume (forall r : int :: " << pre << "_type[" << map.addr
               << "][r] != None ==> (";
            first = true;
            for (const auto& f : cellFields()) {
                os << (first ? "" : " && ") << fieldEq(f, "[" + map.addr + "][r]");
                first = false;
            }
            os << "));\n";
        }
    }

    // Allocate(refMap, refExp, T, vars): recursion over reference elements
    void emitAllocateRec(std::ostringstream& os, const std::string& ind, const Paths::Map& map,
                         const std::string& refExp, const TypePtr& t, std::vector<QuantVar> vars,
                         int depth)
    {
        auto freshVar = [&](const TypePtr& domain) {
            QuantVar v;
            v.name = depth == 0 ? "v" : "v" + std::to_string(depth);
            v.type = quantVarType(domain);
            return v;
        };
        switch (t->kind) {
        case TypeKind::Struct: {
            const StructDecl* sd = idx.structDecl(t->name);
            std::vector<std::pair<std::string, TypePtr>> refMembers;
            for (const auto& m : sd->members)
                if (m.type->isReference())
                    refMembers.push_back({m.name, m.type});
            for (const auto& [name, mt] : refMembers)
                emitAllocate(os, ind, map,
                             paths.cellValue(map, refExp, Paths::Field::Member, name), mt, vars);
            for (const auto& [name, mt] : refMembers)
                emitAllocateRec(os, ind, map,
                                paths.cellValue(map, refExp, Paths::Field::Member, name), mt,
                                vars, depth);
            return;
        }
        case TypeKind::Array: {
            if (!t->elem->isReference())
                return; // value elements: nothing to allocate
            QuantVar v = freshVar(nullptr);
            std::vector<QuantVar> vs = vars;
            vs.push_back(v);
            std::string elem = paths.cellValue(map, refExp, Paths::Field::Data, v.name);
            emitAllocate(os, ind, map, elem, t->elem, vs);
            emitAllocateRec(os, ind, map, elem, t->elem, vs, depth + 1);
            return;
        }
        case TypeKind::Mapping: {
            if (!t->range->isReference())
                return;
            QuantVar v = freshVar(t->domain);
            std::vector<QuantVar> vs = vars;
            vs.push_back(v);
            std::string elem = paths.cellValue(map, refExp, Paths::Field::MapKey, v.name);
            emitAllocate(os, ind, map, elem, t->range, vs);
            emitAllocateRec(os, ind, map, elem, t->range, vs, depth + 1);
            return;
        }
        default:
            return; // value types allocate nothing further
        }
    }

    void emitAllocation(std::ostringstream& os, const std::string& ind, const Paths::Map& map,
                        const std::string& refExp, const TypePtr& t)
    {
        os << ind << "assume " << paths.cellType(map, refExp) << " == None;\n";
        os << ind << paths.cellType(map, refExp) << " := " << type_tag(t) << ";\n";
        emitAllocateRec(os, ind, map, refExp, t, {}, 0);
    }

    void emitInitialisation(std::ostringstream& os, const std::string& ind, const Paths::Map& map,
                            const std::string& refExp, const TypePtr& t,
                            std::vector<QuantVar> vars, int depth)
    {
        auto assume = [&](const std::string& lhs, const std::string& rhs) {
            if (vars.empty())
                os << ind << "assume " << lhs << " == " << rhs << ";\n";
            else
                os << ind << "assume (forall " << vars_list(vars) << " :: " << lhs << " == "
                   << rhs << ");\n";
        };
        switch (t->kind) {
        case TypeKind::Struct: {
            const StructDecl* sd = idx.structDecl(t->name);
            for (const auto& m : sd->members) {
                std::string slot = paths.cellValue(map, refExp, Paths::Field::Member, m.name,
                                                   is_bool(m.type));
                if (m.type->isReference())
                    emitInitialisation(os, ind, map,
                                       paths.cellValue(map, refExp, Paths::Field::Member, m.name),
                                       m.type, vars, depth);
                else
                    assume(slot, defaultScalarText(m.type));
            }
            return;
        }
        case TypeKind::Array: {
            assume(paths.cellValue(map, refExp, Paths::Field::Length),
                   t->fixedSize ? u256_to_string(*t->fixedSize) : "0");
            QuantVar v{depth == 0 ? "v" : "v" + std::to_string(depth), quantVarType(nullptr)};
            std::vector<QuantVar> vs = vars;
            vs.push_back(v);
            std::string slot = paths.cellValue(map, refExp, Paths::Field::Data, v.name,
                                               is_bool(t->elem));
            if (t->elem->isReference()) {
                emitInitialisation(os, ind, map,
                                   paths.cellValue(map, refExp, Paths::Field::Data, v.name),
                                   t->elem, vs, depth + 1);
            } else {
                os << ind << "assume (forall " << vars_list(vs) << " :: " << slot << " == "
                   << defaultScalarText(t->elem) << ");\n";
            }
            return;
        }
        case TypeKind::Mapping: {
            QuantVar v{depth == 0 ? "v" : "v" + std::to_string(depth), quantVarType(t->domain)};
            std::vector<QuantVar> vs = vars;
            vs.push_back(v);
            std::string slot = paths.cellValue(map, refExp, Paths::Field::MapKey, v.name,
                                               is_bool(t->range));
            if (t->range->isReference()) {
                emitInitialisation(os, ind, map,
                                   paths.cellValue(map, refExp, Paths::Field::MapKey, v.name),
                                   t->range, vs, depth + 1);
            } else {
                os << ind << "assume (forall " << vars_list(vs) << " :: " << slot << " == "
                   << defaultScalarText(t->range) << ");\n";
            }
            return;
        }
        default:
            assume(paths.cellValue(map, refExp, Paths::Field::Scalar, "", is_bool(t)),
                   defaultScalarText(t));
            return;
        }
    }

    // -- deployment blocks --------------------------------------------------------

    void emitLazyDeployment(std::ostringstream& os, const std::string& ind, const Contract& c)
    {
        os << ind << "if (" << paths.addrType("this") << " == Unused) {\n";
        std::string in2 = ind + "    ";
        os << in2 << paths.addrType("this") << " := " << c.name << ";\n";
        Paths::Map sto{false, "this"};
        for (const auto& v : c.variables)
            emitAllocation(os, in2, sto, paths.addrMember("this", memberId(c.name, v.name)),
                           v.type);
        os << ind << "}\n";
        os << ind << "assume " << paths.addrType("this") << " == " << c.name << ";\n";
    }

    void emitDeployContract(std::ostringstream& os, const std::string& ind, const Contract& c)
    {
        os << ind << paths.addrType("this") << " := " << c.name << ";\n";
        os << ind << paths.addrBalance("this") << " := 0;\n";
        Paths::Map sto{false, "this"};
        for (const auto& v : c.variables)
            emitAllocation(os, ind, sto, paths.addrMember("this", memberId(c.name, v.name)),
                           v.type);
        for (const auto& v : c.variables)
            emitInitialisation(os, ind, sto, paths.addrMember("this", memberId(c.name, v.name)),
                               v.type, {}, 0);
    }

    // -- statement translation ------------------------------------------------------

    void emitSetBal(std::ostringstream& os, const std::string& ind, const std::string& src,
                    const std::string& dest, const std::string& val)
    {
        os << ind << "assume " << paths.addrBalance(src) << " >= " << val << ";\n";
        os << ind << paths.addrBalance(src) << " := " << paths.addrBalance(src) << " - " << val
           << ";\n";
        os << ind << paths.addrBalance(dest) << " := " << paths.addrBalance(dest) << " + " << val
           << ";\n";
    }

    std::string isContractCond(const std::string& addr)
    {
        return paths.addrType(addr) + " != Unused && " + paths.addrType(addr)
            + " != SimpleAddress";
    }

    void emitStmt(std::ostringstream& os, const std::string& ind, const Stmt& s)
    {
        switch (s.kind) {
        case Stmt::Kind::VariableDeclarationStatement:
            return; // declared in the procedure header
        case Stmt::Kind::WhileLoop:
            os << ind << "while (" << translate(s.condition, 0) << ") {\n";
            emitStmts(os, ind + "    ", s.body);
            os << ind << "}\n";
            return;
        case Stmt::Kind::IfThenElse:
            os << ind << "if (" << translate(s.condition, 0) << ") {\n";
            emitStmts(os, ind + "    ", s.body);
            if (!s.elseBody.empty()) {
                os << ind << "} else {\n";
                emitStmts(os, ind + "    ", s.elseBody);
            }
            os << ind << "}\n";
            return;
        case Stmt::Kind::Require:
        case Stmt::Kind::VAssume:
            os << ind << "assume " << translate(s.condition, 0) << ";\n";
            return;
        case Stmt::Kind::VAssert:
            os << ind << "assert " << translate(s.condition, 0) << ";\n";
            return;
        case Stmt::Kind::Revert:
            os << ind << "assume false;\n";
            return;
        case Stmt::Kind::CexPrint:
            os << ind << "call " << s.funcName << "(" << translate(s.arg, 0) << ");\n";
            return;
        case Stmt::Kind::Assignment: {
            std::string rhs = translate(s.rhs, 0);
            std::string lhs;
            if (s.lhs->type->isReference())
                lhs = refOf(s.lhs); // aliasing assignment stores the reference
            else
                lhs = scalarSlot(s.lhs);
            os << ind << lhs << " := " << rhs << ";\n";
            return;
        }
        case Stmt::Kind::AllocMemory: {
            std::string fresh = "$fresh" + std::to_string(freshCounter++);
            extraLocals.push_back("var " + fresh + " : " + refTypeName() + ";");
            os << ind << "havoc " << fresh << ";\n";
            Paths::Map mem{true, ""};
            emitAllocation(os, ind, mem, fresh, s.type);
            emitInitialisation(os, ind, mem, fresh, s.type, {}, 0);
            os << ind << refOf(s.lhs) << " := " << fresh << ";\n";
            return;
        }
        case Stmt::Kind::Return: {
            if (!s.args.empty() && curFunc_) {
                for (size_t i = 0; i < s.args.size(); ++i)
                    os << ind << curFunc_->outParams[i].variable.name << " := "
                       << translate(s.args[i], 0) << ";\n";
            }
            os << ind << "return;\n";
            return;
        }
        case Stmt::Kind::Transfer: {
            std::string src = translate(s.source, 6);
            std::string dest = translate(s.dest, 6);
            std::string val = translate(s.value, 0);
            os << ind << "if (" << paths.addrType(dest) << " == SimpleAddress) {\n";
            emitSetBal(os, ind + "    ", src, dest, val);
            os << ind << "} else {\n";
            os << ind << "    assume " << isContractCond(dest) << ";\n";
            os << ind << "    if (*) {\n";
            emitSetBal(os, ind + "        ", src, dest, val);
            os << ind << "    } else {\n";
            os << ind << "        assume false;\n";
            os << ind << "    }\n";
            os << ind << "}\n";
            return;
        }
        case Stmt::Kind::Send: {
            std::string src = translate(s.source, 6);
            std::string dest = translate(s.dest, 6);
            std::string val = translate(s.value, 0);
            std::string lhs = scalarSlot(s.lhs);
            os << ind << "if (" << paths.addrType(dest) << " == SimpleAddress) {\n";
            emitSetBal(os, ind + "    ", src, dest, val);
            os << ind << "    " << lhs << " := true;\n";
            os << ind << "} else {\n";
            os << ind << "    assume " << isContractCond(dest) << ";\n";
            os << ind << "    if (*) {\n";
            emitSetBal(os, ind + "        ", src, dest, val);
            os << ind << "        " << lhs << " := true;\n";
            os << ind << "    } else {\n";
            os << ind << "        " << lhs << " := false;\n";
            os << ind << "    }\n";
            os << ind << "}\n";
            return;
        }
        case Stmt::Kind::ContractCall: {
            std::string target = translate(s.target, 6);
            std::string val = translate(s.value, 0);
            const FunctionDeclaration* callee = idx.function(s.type->name, s.funcName);
            os << ind << "assume " << paths.addrType(target) << " == " << s.type->name << ";\n";
            emitSetBal(os, ind, "this", target, val);
            std::vector<std::string> outs;
            if (!s.callLhs.empty()) {
                for (const auto& l : s.callLhs)
                    outs.push_back(l->type->isReference() ? refOf(l) : scalarSlot(l));
            } else {
                for (const auto& op : callee->outParams) {
                    std::string d = "$drop" + std::to_string(dropCounter++);
                    extraLocals.push_back("var " + d + " : " + localType(op.variable.type) + ";");
                    outs.push_back(d);
                }
            }
            os << ind << "call ";
            if (!outs.empty()) {
                for (size_t i = 0; i < outs.size(); ++i)
                    os << (i ? ", " : "") << outs[i];
                os << " := ";
            }
            os << procName(s.type->name, *callee) << "(" << target << ", this, " << val;
            for (const auto& a : s.args)
                os << ", " << translate(a, 0);
            os << ");\n";
            return;
        }
        case Stmt::Kind::CreateContract: {
            std::string fresh = "$fresh" + std::to_string(freshCounter++);
            extraLocals.push_back("var " + fresh + " : " + addressTypeName() + ";");
            os << ind << "havoc " << fresh << ";\n";
            os << ind << "assume " << paths.addrType(fresh) << " == Unused;\n";
            std::string val = translate(s.value, 0);
            os << ind << "assume " << paths.addrBalance("this") << " >= " << val << ";\n";
            os << ind << paths.addrBalance("this") << " := " << paths.addrBalance("this")
               << " - " << val << ";\n";
            const FunctionDeclaration* ctor = idx.constructorOf(s.type->name);
            os << ind << "call " << procName(s.type->name, *ctor) << "(" << fresh << ", this, "
               << val;
            for (const auto& a : s.args)
                os << ", " << translate(a, 0);
            os << ");\n";
            std::string lhs = s.lhs->type->isReference() ? refOf(s.lhs) : scalarSlot(s.lhs);
            os << ind << lhs << " := " << fresh << ";\n";
            return;
        }
        case Stmt::Kind::Call: {
            std::string lhs = scalarSlot(s.lhs);
            os << ind << "call " << lhs << " := callP(" << translate(s.address, 6) << ", "
               << translate(s.value, 0) << ", this);\n";
            return;
        }
        case Stmt::Kind::Push:
            throw InternalError("push reached the emitter (not explicated)");
        }
    }

    void emitStmts(std::ostringstream& os, const std::string& ind, const StmtList& stmts)
    {
        for (const auto& s : stmts)
            emitStmt(os, ind, *s);
    }

    // -- procedures -------------------------------------------------------------------

    const FunctionDeclaration* curFunc_ = nullptr;

    std::string procedureText(const Contract& c, const FunctionDeclaration& f)
    {
        curContract = &c;
        curFunc_ = &f;
        freshCounter = 0;
        dropCounter = 0;
        extraLocals.clear();
        auxNeeded.clear();

        std::ostringstream bodyOs;
        std::string ind = "    ";
        if (f.isConstructor) {
            bodyOs << ind << "assume " << paths.addrType("this") << " == Unused;\n";
            emitDeployContract(bodyOs, ind, c);
            // the deployment endowment arrives after the zeroed start
            bodyOs << ind << paths.addrBalance("this") << " := " << paths.addrBalance("this")
                   << " + msg_value;\n";
        } else {
            emitLazyDeployment(bodyOs, ind, c);
        }
        // MemoryReferenceParametersWellTyped
        Paths::Map mem{true, ""};
        for (const auto& p : f.inParams)
            if (p.variable.type->isReference())
                bodyOs << ind << "assume " << paths.cellType(mem, p.variable.name) << " == "
                       << type_tag(p.variable.type) << ";\n";
        emitStmts(bodyOs, ind, f.body);

        std::ostringstream os;
        os << "procedure " << procName(c.name, f) << "(this : " << addressTypeName()
           << ", msg_sender : " << addressTypeName() << ", msg_value : "
           << (opts.desugar ? "int" : "UInt");
        for (const auto& p : f.inParams)
            os << ", " << p.variable.name << " : " << localType(p.variable.type);
        os << ")";
        if (!f.outParams.empty()) {
            os << " returns (";
            for (size_t i = 0; i < f.outParams.size(); ++i) {
                if (i)
                    os << ", ";
                os << f.outParams[i].variable.name << " : "
                   << localType(f.outParams[i].variable.type);
            }
            os << ")";
        }
        os << "\n{\n";
        for (const auto& d : frontend_locals(f))
            os << "    var " << d.variable.name << " : " << localType(d.variable.type) << ";\n";
        for (const auto& l : extraLocals)
            os << "    " << l << "\n";
        emitAuxDecls(os);
        os << bodyOs.str();
        os << "}\n";
        curFunc_ = nullptr;
        return os.str();
    }

    void emitAuxDecls(std::ostringstream& os)
    {
        for (const char* pre : {"preM", "preS"}) {
            if (!auxNeeded.count(pre))
                continue;
            if (!opts.desugar) {
                os << "    var " << pre << " : [Ref] RefCell;\n";
                continue;
            }
            bool mem = std::string(pre) == "preM";
            for (const auto& f : cellFields())
                os << "    var " << pre << "_" << f.name << " : [int]" << (mem ? "" : "[int]")
                   << (f.nested ? "[int]" : "") << (f.boolish ? "bool" : "int") << ";\n";
        }
    }

    // -- harnesses ------------------------------------------------------------------

    // havoc of s with types, member references, and reference topology framed
    void emitEnvHavoc(std::ostringstream& os, const std::string& ind, bool exceptMain)
    {
        if (opts.desugar) {
            emitEnvHavocDesugar(os, ind, exceptMain);
            return;
        }
        os << ind << "preState := s;\n";
        os << ind << "havoc s;\n";
        os << ind << "assume (forall a : Address :: s[a].type == preState[a].type);\n";
        os << ind << "assume (forall a : Address, mid : enum(MemberIds) :: "
              "s[a].members[mid] == preState[a].members[mid]);\n";
        os << ind << "assume (forall a : Address, r : Ref :: s[a].storage[r].type == "
              "preState[a].storage[r].type);\n";
        for (const TypePtr& t : cellTypes) {
            std::string tag = type_tag(t);
            if (t->kind == TypeKind::Struct) {
                const StructDecl* sd = idx.structDecl(t->name);
                for (const auto& m : sd->members)
                    if (m.type->isReference())
                        os << ind << "assume (forall a : Address, r : Ref :: "
                           << "preState[a].storage[r].type == " << tag
                           << " ==> s[a].storage[r].value." << m.name
                           << " == preState[a].storage[r].value." << m.name << ");\n";
            } else if (t->kind == TypeKind::Array && t->elem->isReference()) {
                os << ind << "assume (forall a : Address, r : Ref, v : int :: "
                   << "preState[a].storage[r].type == " << tag
                   << " ==> s[a].storage[r].value.data[v] == "
                      "preState[a].storage[r].value.data[v]);\n";
            } else if (t->kind == TypeKind::Mapping && t->range->isReference()) {
                os << ind << "assume (forall a : Address, r : Ref, v : "
                   << quantVarType(t->domain) << " :: preState[a].storage[r].type == " << tag
                   << " ==> s[a].storage[r].value[v] == preState[a].storage[r].value[v]);\n";
            }
        }
        if (exceptMain)
            os << ind << "assume s[main_contract] == preState[main_contract];\n";
    }

    // the parallel maps making up the desugared address state
    std::vector<std::string> addressMapNames() const
    {
        std::vector<std::string> out{"type", "balance", "members"};
        for (const auto& f : cellFields())
            out.push_back("storage_" + f.name);
        return out;
    }

    std::string addressMapType(const std::string& n) const
    {
        if (n == "type" || n == "balance")
            return "[int]int";
        if (n == "members")
            return "[int][int]int";
        for (const auto& f : cellFields())
            if ("storage_" + f.name == n)
                return std::string("[int][int]") + (f.nested ? "[int]" : "")
                    + (f.boolish ? "bool" : "int");
        return "[int]int";
    }

    void emitEnvHavocDesugar(std::ostringstream& os, const std::string& ind, bool exceptMain)
    {
        for (const auto& n : addressMapNames())
            os << ind << "preState_" << n << " := s_" << n << ";\n";
        for (const auto& n : addressMapNames())
            os << ind << "havoc s_" << n << ";\n";
        os << ind << "assume (forall a : int :: s_type[a] == preState_type[a]);\n";
        os << ind << "assume (forall a : int, mid : int :: s_members[a][mid] == "
              "preState_members[a][mid]);\n";
        os << ind << "assume (forall a : int, r : int :: s_storage_type[a][r] == "
              "preState_storage_type[a][r]);\n";
        os << ind << "assume (forall a : int :: 0 <= s_balance[a]);\n";
        for (const TypePtr& t : cellTypes) {
            std::string tag = type_tag(t);
            if (t->kind == TypeKind::Struct) {
                const StructDecl* sd = idx.structDecl(t->name);
                for (const auto& m : sd->members)
                    if (m.type->isReference())
                        os << ind << "assume (forall a : int, r : int :: "
                           << "preState_storage_type[a][r] == " << tag << " ==> s_storage_value_"
                           << m.name << "[a][r] == preState_storage_value_" << m.name
                           << "[a][r]);\n";
            } else if (t->kind == TypeKind::Array && t->elem->isReference()) {
                os << ind << "assume (forall a : int, r : int, v : int :: "
                   << "preState_storage_type[a][r] == " << tag
                   << " ==> s_storage_value_data[a][r][v] == "
                      "preState_storage_value_data[a][r][v]);\n";
            } else if (t->kind == TypeKind::Mapping && t->range->isReference()) {
                os << ind << "assume (forall a : int, r : int, v : "
                   << quantVarType(t->domain) << " :: preState_storage_type[a][r] == " << tag
                   << " ==> s_storage_value_map[a][r][v] == "
                      "preState_storage_value_map[a][r][v]);\n";
            }
        }
        if (exceptMain) {
            os << ind << "assume s_balance[main_contract] == preState_balance[main_contract];\n";
            for (const auto& f : cellFields()) {
                if (f.nested)
                    os << ind << "assume (forall r : int, k : int :: s_storage_" << f.name
                       << "[main_contract][r][k] == preState_storage_" << f.name
                       << "[main_contract][r][k]);\n";
                else
                    os << ind << "assume (forall r : int :: s_storage_" << f.name
                       << "[main_contract][r] == preState_storage_" << f.name
                       << "[main_contract][r]);\n";
            }
        }
    }

    void declarePreState(std::ostringstream& os, const std::string& ind)
    {
        if (!opts.desugar) {
            os << ind << "var preState : [Address] AddressCell;\n";
            return;
        }
        for (const auto& n : addressMapNames())
            os << ind << "var preState_" << n << " : " << addressMapType(n) << ";\n";
    }

    void emitHarness(std::ostringstream& os)
    {
        const Contract& c = *idx.contract(cfg.contract);
        auto interface = idx.interfaceFunctions(cfg.contract);
        const FunctionDeclaration* ctor = idx.constructorOf(cfg.contract);
        const FunctionDeclaration* single = cfg.kind == HarnessConfig::Kind::Function
            ? idx.function(cfg.contract, cfg.function)
            : nullptr;

        std::vector<const FunctionDeclaration*> callable;
        if (cfg.kind == HarnessConfig::Kind::Contract)
            callable = interface;
        else if (single)
            callable.push_back(single);

        // shared declarations for args and dropped results
        auto declareCallVars = [&](std::ostringstream& o, const std::string& ind,
                                   const std::vector<const FunctionDeclaration*>& fns,
                                   bool withCtor) {
            std::set<std::string> seen;
            auto one = [&](const FunctionDeclaration& f) {
                for (const auto& p : f.inParams) {
                    std::string n = "arg_" + f.name + "_" + p.variable.name;
                    if (seen.insert(n).second)
                        o << ind << "var " << n << " : " << localType(p.variable.type) << ";\n";
                }
                for (size_t i = 0; i < f.outParams.size(); ++i) {
                    std::string n = "out_" + f.name + "_" + std::to_string(i);
                    if (seen.insert(n).second)
                        o << ind << "var " << n << " : "
                          << localType(f.outParams[i].variable.type) << ";\n";
                }
            };
            if (withCtor && ctor)
                one(*ctor);
            for (const auto* f : fns)
                one(*f);
        };

        auto emitCallTo = [&](std::ostringstream& o, const FunctionDeclaration& f,
                              const std::string& ind2, const std::string& sender,
                              const std::string& value) {
            emitSetBal(o, ind2, sender, "main_contract", value);
            o << ind2 << "call ";
            if (!f.outParams.empty()) {
                for (size_t i = 0; i < f.outParams.size(); ++i)
                    o << (i ? ", " : "") << "out_" << f.name << "_" << i;
                o << " := ";
            }
            o << procName(c.name, f) << "(main_contract, " << sender << ", " << value;
            for (const auto& p : f.inParams)
                o << ", arg_" << f.name << "_" << p.variable.name;
            o << ");\n";
        };

        auto havocArgs = [&](std::ostringstream& o, const FunctionDeclaration& f,
                             const std::string& ind2) {
            for (const auto& p : f.inParams) {
                std::string n = "arg_" + f.name + "_" + p.variable.name;
                o << ind2 << "havoc " << n << ";\n";
                emitRangeAssume(o, ind2, n, p.variable.type);
            }
        };

        std::string ind = "    ";

        // -- main -------------------------------------------------------------
        os << "procedure main()\n{\n";
        os << ind << "var sender : " << addressTypeName() << ";\n";
        os << ind << "var value : " << (opts.desugar ? "int" : "UInt") << ";\n";
        declarePreState(os, ind);
        declareCallVars(os, ind, callable, cfg.kind == HarnessConfig::Kind::Contract);

        if (opts.desugar) {
            os << ind << "assume (forall r : int :: m_type[r] == None);\n";
            os << ind << "assume (forall a : int :: s_type[a] == Unused || s_type[a] == "
                  "SimpleAddress);\n";
            os << ind << "assume (forall a : int :: 0 <= s_balance[a]);\n";
        } else {
            os << ind << "assume (forall r : Ref :: m[r].type == None);\n";
            os << ind << "assume (forall a : Address :: s[a].type == Unused || s[a].type == "
                  "SimpleAddress);\n";
        }

        auto havocSenderValue = [&](const std::string& ind2) {
            os << ind2 << "havoc sender;\n";
            emitRangeAssume(os, ind2, "sender", type_address());
            os << ind2 << "assume sender != main_contract;\n";
            os << ind2 << "havoc value;\n";
            emitRangeAssume(os, ind2, "value", type_uint());
        };

        if (cfg.kind == HarnessConfig::Kind::Contract) {
            os << ind << "assume " << paths.addrType("main_contract") << " == Unused;\n";
            havocSenderValue(ind);
            if (ctor)
                havocArgs(os, *ctor, ind);
            // the constructor books the endowment itself
            os << ind << "assume " << paths.addrBalance("sender") << " >= value;\n";
            os << ind << paths.addrBalance("sender") << " := " << paths.addrBalance("sender")
               << " - value;\n";
            os << ind << "call " << procName(c.name, *ctor) << "(main_contract, sender, value";
            if (ctor)
                for (const auto& p : ctor->inParams)
                    os << ", arg_constructor_" << p.variable.name;
            os << ");\n";
            os << ind << "while (*) {\n";
            std::string in2 = ind + "    ";
            if (opts.desugar) {
                os << in2 << "havoc b_time;\n";
                os << in2 << "assume 0 <= b_time;\n";
                os << in2 << "havoc tx_origin;\n";
            } else {
                os << in2 << "havoc b;\n";
                os << in2 << "havoc tx;\n";
            }
            emitEnvHavoc(os, in2, /*exceptMain=*/true);
            havocSenderValue(in2);
            bool first = true;
            for (const auto* f : interface) {
                os << in2 << (first ? "if (*) {\n" : "} else if (*) {\n");
                havocArgs(os, *f, in2 + "    ");
                emitCallTo(os, *f, in2 + "    ", "sender", "value");
                first = false;
            }
            if (!interface.empty())
                os << in2 << "}\n";
            os << ind << "}\n";
        } else {
            os << ind << "assume " << paths.addrType("main_contract") << " == Unused || "
               << paths.addrType("main_contract") << " == " << c.name << ";\n";
            if (opts.desugar) {
                os << ind << "havoc b_time;\n";
                os << ind << "havoc tx_origin;\n";
            } else {
                os << ind << "havoc b;\n";
                os << ind << "havoc tx;\n";
            }
            havocSenderValue(ind);
            havocArgs(os, *single, ind);
            emitCallTo(os, *single, ind, "sender", "value");
        }
        os << "}\n\n";

        // -- callP ------------------------------------------------------------
        os << "procedure callP(dest : " << addressTypeName() << ", value : "
           << (opts.desugar ? "int" : "UInt") << ", sender : " << addressTypeName()
           << ") returns (ok : bool)\n{\n";
        declarePreState(os, ind);
        if (cfg.kind == HarnessConfig::Kind::Contract) {
            os << ind << "var rvalue : " << (opts.desugar ? "int" : "UInt") << ";\n";
            declareCallVars(os, ind, interface, false);
            os << ind << "if (*) {\n";
            std::string in2 = ind + "    ";
            emitSetBal(os, in2, "sender", "dest", "value");
            os << in2 << "while (*) {\n";
            std::string in3 = in2 + "    ";
            bool first = true;
            for (const auto* f : interface) {
                os << in3 << (first ? "if (*) {\n" : "} else if (*) {\n");
                std::string in4 = in3 + "    ";
                os << in4 << "havoc rvalue;\n";
                emitRangeAssume(os, in4, "rvalue", type_uint());
                havocArgs(os, *f, in4);
                emitCallTo(os, *f, in4, "dest", "rvalue");
                first = false;
            }
            if (!interface.empty())
                os << in3 << "}\n";
            os << in2 << "}\n";
            os << in2 << "ok := true;\n";
            os << ind << "} else {\n";
            os << ind << "    ok := false;\n";
            os << ind << "}\n";
        } else {
            os << ind << "if (*) {\n";
            std::string in2 = ind + "    ";
            emitSetBal(os, in2, "sender", "dest", "value");
            emitEnvHavoc(os, in2, /*exceptMain=*/false);
            os << in2 << "ok := true;\n";
            os << ind << "} else {\n";
            os << ind << "    ok := false;\n";
            os << ind << "}\n";
        }
        os << "}\n";
    }

    // range constraints restoring the abstract types' invariants after havoc
    void emitRangeAssume(std::ostringstream& os, const std::string& ind, const std::string& name,
                         const TypePtr& t)
    {
        if (!opts.desugar)
            return;
        switch (t->kind) {
        case TypeKind::UInt:
            os << ind << "assume 0 <= " << name << " && " << name << " < " << kModulus << ";\n";
            return;
        case TypeKind::Int:
            os << ind << "assume 0 - " << kHalf << " <= " << name << " && " << name << " < "
               << kHalf << ";\n";
            return;
        case TypeKind::Address:
        case TypeKind::Contract:
            os << ind << "assume 0 <= " << name << ";\n";
            return;
        case TypeKind::Enum: {
            const EnumDecl* e = idx.enumDecl(t->name);
            os << ind << "assume ";
            for (size_t i = 0; i < e->values.size(); ++i)
                os << (i ? " || " : "") << name << " == " << t->name << "_" << e->values[i];
            os << ";\n";
            return;
        }
        default:
            return;
        }
    }

    // -- prelude ----------------------------------------------------------------------

    void checkCollisions()
    {
        auto add = [&](const std::string& n) {
            if (!globalNames.insert(n).second)
                throw FrontendError("TypeError", {},
                                    "name collision in the emitted program: " + n);
        };
        add("Unused");
        add("SimpleAddress");
        add("None");
        for (const auto& c : program.contracts) {
            add(c.name);
            for (const auto& v : c.variables)
                add(memberId(c.name, v.name));
            for (const auto& f : c.functions)
                add(procName(c.name, f));
            for (const auto& e : c.enums)
                for (const auto& v : e.values)
                    add(e.name + "_" + v);
        }
        for (const TypePtr& t : cellTypes) {
            std::string tag = type_tag(t);
            if (tag != "uint" && tag != "int_" && tag != "bool_" && tag != "address")
                if (t->kind != TypeKind::Struct && t->kind != TypeKind::Enum)
                    add(tag);
        }
    }

    std::string preludePaper()
    {
        std::ostringstream os;
        os << "// encoding of the contract state model\n";
        std::string addrVals = "Unused, SimpleAddress";
        for (const auto& c : program.contracts)
            addrVals += ", " + c.name;
        os << "enum AddressType = (" << addrVals << ");\n";
        std::string mids;
        for (const auto& c : program.contracts)
            for (const auto& v : c.variables)
                mids += (mids.empty() ? "" : ", ") + memberId(c.name, v.name);
        if (mids.empty())
            mids = "NoMembers";
        os << "enum MemberIds = (" << mids << ");\n";
        std::string tags = "None";
        for (const TypePtr& t : cellTypes)
            tags += ", " + type_tag(t);
        os << "enum RefTypes = (" << tags << ");\n";
        for (const auto& c : program.contracts)
            for (const auto& e : c.enums) {
                os << "enum " << e.name << " = (";
                for (size_t i = 0; i < e.values.size(); ++i)
                    os << (i ? ", " : "") << e.name << "_" << e.values[i];
                os << ");\n";
            }
        os << "record RefValues = (";
        if (refValueFields.empty())
            os << "none : UInt";
        for (size_t i = 0; i < refValueFields.size(); ++i)
            os << (i ? ", " : "") << refValueFields[i].first << " : "
               << refValueFields[i].second;
        os << ");\n";
        os << "record AddressCell = (type : enum(AddressType), balance : UInt, members : "
              "[enum(MemberIds)] Ref, storage : [Ref] RefCell);\n";
        os << "record RefCell = (type : enum(RefTypes), value : record(RefValues));\n";
        os << "record BType = (time : UInt);\n";
        os << "record TxType = (origin : Address);\n";
        os << "record MsgType = (sender : Address, value : UInt);\n";
        os << "\n";
        os << "var s : [Address] AddressCell;\n";
        os << "var b : BType;\n";
        os << "var tx : TxType;\n";
        os << "var m : [Ref] RefCell;\n";
        os << "var main_contract : Address;\n";
        return os.str();
    }

    std::string preludeDesugar()
    {
        std::ostringstream os;
        os << "// desugared encoding: records lowered to parallel maps, enums to unique "
              "consts\n";
        auto uniqueConst = [&](const std::string& n) {
            os << "const unique " << n << " : int;\n";
        };
        uniqueConst("Unused");
        uniqueConst("SimpleAddress");
        for (const auto& c : program.contracts)
            uniqueConst(c.name);
        std::string mids;
        for (const auto& c : program.contracts)
            for (const auto& v : c.variables)
                uniqueConst(memberId(c.name, v.name));
        uniqueConst("None");
        for (const TypePtr& t : cellTypes)
            uniqueConst(type_tag(t));
        for (const auto& c : program.contracts)
            for (const auto& e : c.enums)
                for (const auto& v : e.values)
                    uniqueConst(e.name + "_" + v);
        os << "\n";
        os << "var s_type : [int]int;\n";
        os << "var s_balance : [int]int;\n";
        os << "var s_members : [int][int]int;\n";
        for (const auto& f : cellFields()) {
            os << "var s_storage_" << f.name << " : [int][int]" << (f.nested ? "[int]" : "")
               << (f.boolish ? "bool" : "int") << ";\n";
            os << "var m_" << f.name << " : [int]" << (f.nested ? "[int]" : "")
               << (f.boolish ? "bool" : "int") << ";\n";
        }
        os << "var b_time : int;\n";
        os << "var tx_origin : int;\n";
        os << "var main_contract : int;\n";
        return os.str();
    }

    std::string run()
    {
        checkCollisions();
        std::ostringstream os;
        os << (opts.desugar ? preludeDesugar() : preludePaper());
        os << "\n";
        for (const auto& [label, t] : cexPrints)
            os << "procedure " << label << "(x : " << localType(t) << ")\n{\n}\n\n";
        for (const auto& c : program.contracts)
            for (const auto& f : c.functions)
                os << procedureText(c, f) << "\n";
        if (!opts.desugar) {
            std::ostringstream hs;
            emitHarness(hs);
            os << hs.str();
        } else {
            std::ostringstream hs;
            emitHarness(hs);
            os << hs.str();
        }
        return os.str();
    }
};

std::vector<LocalVariableDeclaration> Emitter::frontend_locals(const FunctionDeclaration& f)
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

} // namespace

std::string emit_program(const Program& solidProgram, const HarnessConfig& harness,
                         const EmitOptions& opts)
{
    Emitter e(solidProgram, harness, opts);
    return e.run();
}

std::string emit_allocation(const std::string& refMapExpr, const std::string& refExpr,
                            const TypePtr& type, const ProgramIndex& idx)
{
    HarnessConfig cfg;
    cfg.contract = idx.program().contracts.empty() ? "" : idx.program().contracts.front().name;
    Emitter e(idx.program(), cfg, {});
    std::ostringstream os;
    Paths::Map map{refMapExpr == "m", refMapExpr == "m" ? "" : "this"};
    e.emitAllocation(os, "", map, refExpr, type);
    return os.str();
}

std::string emit_initialisation(const std::string& refMapExpr, const std::string& refExpr,
                                const TypePtr& type, const ProgramIndex& idx)
{
    HarnessConfig cfg;
    cfg.contract = idx.program().contracts.empty() ? "" : idx.program().contracts.front().name;
    Emitter e(idx.program(), cfg, {});
    std::ostringstream os;
    Paths::Map map{refMapExpr == "m", refMapExpr == "m" ? "" : "this"};
    e.emitInitialisation(os, "", map, refExpr, type, {}, 0);
    return os.str();
}

std::string emit_lazy_deployment(const std::string& contract, const ProgramIndex& idx)
{
    HarnessConfig cfg;
    cfg.contract = contract;
    Emitter e(idx.program(), cfg, {});
    std::ostringstream os;
    e.emitLazyDeployment(os, "", *idx.contract(contract));
    return os.str();
}

std::string emit_deploy_contract(const std::string& contract, const ProgramIndex& idx)
{
    HarnessConfig cfg;
    cfg.contract = contract;
    Emitter e(idx.program(), cfg, {});
    std::ostringstream os;
    e.emitDeployContract(os, "", *idx.contract(contract));
    return os.str();
}

} // namespace solidbmc::ivl
