// solidbmc: bounded model checking toolchain for a Solidity subset
// Copyright 2026 The solidbmc Authors.
// SPDX-License-Identifier: Apache-2.0
#include "frontend/printer.hpp"

#include <sstream>

namespace solidbmc::frontend {

using namespace ast;

namespace {

// operator precedence, higher binds tighter
int prec_of(const std::string& op)
{
    if (op == "||") return 1;
    if (op == "&&") return 2;
    if (op == "==" || op == "!=" || op == "<" || op == ">" || op == "<=" || op == ">=") return 3;
    if (op == "+" || op == "-") return 4;
    if (op == "*" || op == "/" || op == "%") return 5;
    return 6;
}

int exprPrec(const ExprPtr& e)
{
    if (!e)
        return 7;
    switch (e->kind) {
    case Expr::Kind::Binary: return prec_of(e->name);
    case Expr::Kind::Unary: return 6;
    default: return 7;
    }
}

void print_expr(std::ostream& os, const ExprPtr& e, int minPrec);

void print_expr_parens(std::ostream& os, const ExprPtr& e, int prec, int minPrec)
{
    if (prec < minPrec) {
        os << "(";
        print_expr(os, e, 0);
        os << ")";
    } else {
        print_expr(os, e, minPrec);
    }
}

void print_expr(std::ostream& os, const ExprPtr& e, int minPrec)
{
    if (!e) {
        os << "<null>";
        return;
    }
    switch (e->kind) {
    case Expr::Kind::Identifier:
        os << e->name;
        return;
    case Expr::Kind::NumberLit:
        os << u256_to_string(e->number);
        return;
    case Expr::Kind::BoolLit:
        os << (e->boolval ? "true" : "false");
        return;
    case Expr::Kind::Member:
        print_expr(os, e->base, 7);
        os << "." << e->name;
        return;
    case Expr::Kind::Index:
        print_expr(os, e->base, 7);
        os << "[";
        print_expr(os, e->index, 0);
        os << "]";
        return;
    case Expr::Kind::Unary: {
        os << e->name;
        // keep `- -x` unambiguous and readable
        bool needParens = e->base->kind == Expr::Kind::Unary || e->base->kind == Expr::Kind::Binary;
        if (needParens) {
            os << "(";
            print_expr(os, e->base, 0);
            os << ")";
        } else {
            print_expr(os, e->base, 7);
        }
        return;
    }
    case Expr::Kind::Binary: {
        int p = prec_of(e->name);
        if (p < minPrec) {
            os << "(";
            print_expr(os, e, 0);
            os << ")";
            return;
        }
        bool cmp = p == 3;
        print_expr_parens(os, e->lhs, exprPrec(e->lhs), cmp ? p + 1 : p);
        os << " " << e->name << " ";
        print_expr_parens(os, e->rhs, exprPrec(e->rhs), p + 1);
        return;
    }
    case Expr::Kind::CallSuffix:
    case Expr::Kind::NewSuffix:
        os << "<unresolved-call>";
        return;
    }
}

std::string ind(int n) { return std::string(n * 4, ' '); }

void print_stmt_list(std::ostream& os, const StmtList& stmts, int indent);

std::string expr_str(const ExprPtr& e)
{
    std::ostringstream os;
    print_expr(os, e, 0);
    return os.str();
}

void print_args(std::ostream& os, const std::vector<ExprPtr>& args)
{
    os << "(";
    for (size_t i = 0; i < args.size(); ++i) {
        if (i)
            os << ", ";
        os << expr_str(args[i]);
    }
    os << ")";
}

// single identifier assigned by a statement, if any (used for decl merging)
const ExprPtr* assigned_ident(const Stmt& s)
{
    switch (s.kind) {
    case Stmt::Kind::Assignment:
    case Stmt::Kind::AllocMemory:
    case Stmt::Kind::CreateContract:
    case Stmt::Kind::Send:
    case Stmt::Kind::Call:
        return s.lhs && s.lhs->kind == Expr::Kind::Identifier ? &s.lhs : nullptr;
    case Stmt::Kind::ContractCall:
        return s.callLhs.size() == 1 && s.callLhs[0]->kind == Expr::Kind::Identifier
            ? &s.callLhs[0]
            : nullptr;
    default:
        return nullptr;
    }
}

std::string local_decl_str(const LocalVariableDeclaration& d, bool withName = true)
{
    std::string out = type_to_string(d.variable.type);
    if (d.dataLocation == DataLocation::Memory)
        out += " memory";
    else if (d.dataLocation == DataLocation::Storage)
        out += " storage";
    if (withName && d.variable.name.rfind("$arg", 0) != 0 && d.variable.name.rfind("$ret", 0) != 0)
        out += " " + d.variable.name;
    return out;
}

// prints a statement; `declPrefix` carries a merged declaration head
void print_stmt(std::ostream& os, const Stmt& s, int indent, const std::string& declPrefix = "")
{
    std::string pad = ind(indent);
    auto lhsHead = [&](const std::string& plain) {
        return pad + (declPrefix.empty() ? plain : declPrefix);
    };
    switch (s.kind) {
    case Stmt::Kind::WhileLoop:
        os << pad << "while (" << expr_str(s.condition) << ") {\n";
        print_stmt_list(os, s.body, indent + 1);
        os << pad << "}\n";
        return;
    case Stmt::Kind::IfThenElse:
        os << pad << "if (" << expr_str(s.condition) << ") {\n";
        print_stmt_list(os, s.body, indent + 1);
        if (!s.elseBody.empty()) {
            os << pad << "} else {\n";
            print_stmt_list(os, s.elseBody, indent + 1);
        }
        os << pad << "}\n";
        return;
    case Stmt::Kind::VariableDeclarationStatement:
        os << pad << local_decl_str(s.decl) << ";\n";
        return;
    case Stmt::Kind::Assignment:
        os << lhsHead(expr_str(s.lhs)) << " = " << expr_str(s.rhs) << ";\n";
        return;
    case Stmt::Kind::AllocMemory:
        os << lhsHead(expr_str(s.lhs)) << " = new " << type_to_string(s.type);
        if (s.type->isArray())
            os << "(0)";
        else
            os << "()";
        os << ";\n";
        return;
    case Stmt::Kind::Revert:
        os << pad << "revert();\n";
        return;
    case Stmt::Kind::Require:
        os << pad << "require(" << expr_str(s.condition) << ");\n";
        return;
    case Stmt::Kind::Return:
        os << pad << "return";
        if (s.args.size() == 1)
            os << " " << expr_str(s.args[0]);
        else if (s.args.size() > 1) {
            os << " ";
            print_args(os, s.args);
        }
        os << ";\n";
        return;
    case Stmt::Kind::ContractCall: {
        std::string callee;
        if (s.target && s.target->kind == Expr::Kind::Identifier && s.target->name == "this")
            callee = s.funcName;
        else
            callee = expr_str(s.target) + "." + s.funcName;
        bool hasValue = !(s.value && s.value->kind == Expr::Kind::NumberLit && s.value->number == 0);
        if (hasValue)
            callee += ".value(" + expr_str(s.value) + ")";
        std::ostringstream callos;
        callos << callee;
        print_args(callos, s.args);
        if (s.callLhs.empty())
            os << pad << callos.str() << ";\n";
        else if (s.callLhs.size() == 1)
            os << lhsHead(expr_str(s.callLhs[0])) << " = " << callos.str() << ";\n";
        else {
            os << pad << "(";
            for (size_t i = 0; i < s.callLhs.size(); ++i) {
                if (i)
                    os << ", ";
                os << expr_str(s.callLhs[i]);
            }
            os << ") = " << callos.str() << ";\n";
        }
        return;
    }
    case Stmt::Kind::CreateContract: {
        std::ostringstream callos;
        callos << "new " << s.type->name;
        print_args(callos, s.args);
        os << lhsHead(expr_str(s.lhs)) << " = " << callos.str() << ";\n";
        return;
    }
    case Stmt::Kind::Transfer:
        os << pad << expr_str(s.dest) << ".transfer(" << expr_str(s.value) << ");\n";
        return;
    case Stmt::Kind::Send:
        os << lhsHead(expr_str(s.lhs)) << " = " << expr_str(s.dest) << ".send("
           << expr_str(s.value) << ");\n";
        return;
    case Stmt::Kind::Call:
        os << lhsHead(expr_str(s.lhs)) << " = " << expr_str(s.address) << ".call.value("
           << expr_str(s.value) << ")(\"\");\n";
        return;
    case Stmt::Kind::VAssume:
        os << pad << "Verification.Assume(" << expr_str(s.condition) << ");\n";
        return;
    case Stmt::Kind::VAssert:
        os << pad << "Verification.Assert(" << expr_str(s.condition) << ");\n";
        return;
    case Stmt::Kind::CexPrint:
        os << pad << "Verification." << s.funcName << "(" << expr_str(s.arg) << ");\n";
        return;
    case Stmt::Kind::Push:
        os << pad << expr_str(s.array) << ".push(" << expr_str(s.arg) << ");\n";
        return;
    }
}

void print_stmt_list(std::ostream& os, const StmtList& stmts, int indent)
{
    for (size_t i = 0; i < stmts.size(); ++i) {
        const Stmt& s = *stmts[i];
        // merge `T x;` + `x = ...` into `T x = ...;`
        if (s.kind == Stmt::Kind::VariableDeclarationStatement && i + 1 < stmts.size()) {
            const Stmt& nextStmt = *stmts[i + 1];
            const ExprPtr* lv = assigned_ident(nextStmt);
            if (lv && (*lv)->name == s.decl.variable.name) {
                // `new T[](n)` expands to an alloc plus a plain length write;
                // print those back as the original surface form.
                if (nextStmt.kind == Stmt::Kind::AllocMemory && i + 2 < stmts.size()
                    && nextStmt.type->isArray()) {
                    const Stmt& third = *stmts[i + 2];
                    if (third.kind == Stmt::Kind::Assignment && third.solidLength
                        && third.lhs->kind == Expr::Kind::Member
                        && third.lhs->base->kind == Expr::Kind::Identifier
                        && third.lhs->base->name == s.decl.variable.name) {
                        os << ind(indent) << local_decl_str(s.decl) << " = new "
                           << type_to_string(nextStmt.type) << "(" << expr_str(third.rhs)
                           << ");\n";
                        i += 2;
                        continue;
                    }
                }
                print_stmt(os, nextStmt, indent, local_decl_str(s.decl));
                ++i;
                continue;
            }
        }
        // bare alloc + plain length write (no declaration in front)
        if (s.kind == Stmt::Kind::AllocMemory && s.type->isArray() && i + 1 < stmts.size()
            && s.lhs->kind == Expr::Kind::Identifier) {
            const Stmt& nextStmt = *stmts[i + 1];
            if (nextStmt.kind == Stmt::Kind::Assignment && nextStmt.solidLength
                && nextStmt.lhs->kind == Expr::Kind::Member
                && nextStmt.lhs->base->kind == Expr::Kind::Identifier
                && nextStmt.lhs->base->name == s.lhs->name) {
                os << ind(indent) << expr_str(s.lhs) << " = new " << type_to_string(s.type)
                   << "(" << expr_str(nextStmt.rhs) << ");\n";
                ++i;
                continue;
            }
        }
        print_stmt(os, s, indent);
    }
}

void print_function(std::ostream& os, const FunctionDeclaration& f, int indent)
{
    std::string pad = ind(indent);
    os << pad;
    if (f.isConstructor)
        os << "constructor(";
    else
        os << "function " << f.name << "(";
    for (size_t i = 0; i < f.inParams.size(); ++i) {
        if (i)
            os << ", ";
        os << local_decl_str(f.inParams[i]);
    }
    os << ") " << (f.visibility == Visibility::Public ? "public" : "private");
    if (f.isPayable)
        os << " payable";
    if (!f.outParams.empty()) {
        os << " returns (";
        for (size_t i = 0; i < f.outParams.size(); ++i) {
            if (i)
                os << ", ";
            os << local_decl_str(f.outParams[i]);
        }
        os << ")";
    }
    os << " {\n";
    print_stmt_list(os, f.body, indent + 1);
    os << pad << "}\n";
}

} // namespace

std::string print_program(const Program& p)
{
    std::ostringstream os;
    bool firstContract = true;
    for (const auto& c : p.contracts) {
        if (!firstContract)
            os << "\n";
        firstContract = false;
        os << "contract " << c.name << " {\n";
        for (const auto& e : c.enums) {
            os << ind(1) << "enum " << e.name << " {\n";
            for (size_t i = 0; i < e.values.size(); ++i)
                os << ind(2) << e.values[i] << (i + 1 < e.values.size() ? "," : "") << "\n";
            os << ind(1) << "}\n\n";
        }
        for (const auto& st : c.structs) {
            os << ind(1) << "struct " << st.name << " {\n";
            for (const auto& m : st.members)
                os << ind(2) << type_to_string(m.type) << " " << m.name << ";\n";
            os << ind(1) << "}\n\n";
        }
        for (const auto& v : c.variables)
            os << ind(1) << type_to_string(v.type) << " " << v.name << ";\n";
        if (!c.variables.empty())
            os << "\n";
        for (size_t i = 0; i < c.functions.size(); ++i) {
            if (i)
                os << "\n";
            print_function(os, c.functions[i], 1);
        }
        os << "}\n";
    }
    return os.str();
}

std::string print_statements(const StmtList& stmts, int indent)
{
    std::ostringstream os;
    print_stmt_list(os, stmts, indent);
    return os.str();
}

std::string print_expression(const ExprPtr& e)
{
    return expr_str(e);
}

} // namespace solidbmc::frontend
