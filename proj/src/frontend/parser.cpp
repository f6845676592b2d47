// solidbmc: bounded model checking toolchain for a Solidity subset
// Copyright 2026 The solidbmc Authors.
// SPDX-License-Identifier: Apache-2.0
#include "frontend/parser.hpp"

#include "frontend/lexer.hpp"

#include <algorithm>
#include <set>

namespace solidbmc::frontend {

using namespace ast;

namespace {

const std::set<std::string> kReservedMemberNames = {
    "length", "balance", "push", "send", "transfer", "call", "value",
};

class Parser {
public:
    Parser(std::vector<Token> toks, const ParseOptions& opts)
        : toks_(std::move(toks))
        , opts_(opts)
    {
    }

    Program run()
    {
        Program p;
        while (!atEnd()) {
            const Token& t = peek();
            if (t.isIdent("pragma")) {
                skipUntilSemi();
            } else if (t.isIdent("import")) {
                parseImport();
            } else if (t.isIdent("contract")) {
                p.contracts.push_back(parseContract());
            } else if (t.isIdent("library") || t.isIdent("interface") || t.isIdent("abstract")) {
                fail_unsupported(t.loc, "declaration '" + t.text + "'");
            } else {
                fail_syntax(t.loc, "expected contract declaration, got '" + t.text + "'");
            }
        }
        resolveNewForms(p);
        return p;
    }

private:
    std::vector<Token> toks_;
    size_t pos_ = 0;
    ParseOptions opts_;
    std::set<std::string> contractNames_;
    int synthCounter_ = 0;

    // -- token helpers ------------------------------------------------------

    const Token& peek(size_t ahead = 0) const
    {
        size_t i = std::min(pos_ + ahead, toks_.size() - 1);
        return toks_[i];
    }
    const Token& next()
    {
        const Token& t = toks_[pos_];
        if (t.kind != Token::Kind::End)
            ++pos_;
        return t;
    }
    bool atEnd() const { return peek().kind == Token::Kind::End; }
    bool acceptPunct(const std::string& p)
    {
        if (peek().isPunct(p)) {
            ++pos_;
            return true;
        }
        return false;
    }
    bool acceptIdent(const std::string& w)
    {
        if (peek().isIdent(w)) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expectPunct(const std::string& p)
    {
        if (!acceptPunct(p))
            fail_syntax(peek().loc, "expected '" + p + "', got '" + peek().text + "'");
    }
    std::string expectIdent(const char* what)
    {
        const Token& t = peek();
        if (t.kind != Token::Kind::Identifier)
            fail_syntax(t.loc, std::string("expected ") + what + ", got '" + t.text + "'");
        ++pos_;
        return t.text;
    }
    void skipUntilSemi()
    {
        while (!atEnd() && !peek().isPunct(";"))
            ++pos_;
        expectPunct(";");
    }

    // -- top level -----------------------------------------------------------

    void parseImport()
    {
        SourceLoc loc = peek().loc;
        next(); // import
        if (peek().kind != Token::Kind::String)
            fail_unsupported(loc, "non-path import");
        std::string path = next().text;
        expectPunct(";");
        if (path.find("Verification") == std::string::npos)
            fail_unsupported(loc, "import of '" + path + "' (only the Verification library is supported)");
    }

    Contract parseContract()
    {
        Contract c;
        c.loc = peek().loc;
        next(); // contract
        c.name = expectIdent("contract name");
        contractNames_.insert(c.name);
        if (peek().isIdent("is"))
            fail_unsupported(peek().loc, "inheritance");
        expectPunct("{");
        while (!acceptPunct("}")) {
            const Token& t = peek();
            if (t.isIdent("enum"))
                c.enums.push_back(parseEnum());
            else if (t.isIdent("struct"))
                c.structs.push_back(parseStruct());
            else if (t.isIdent("function") || t.isIdent("constructor"))
                c.functions.push_back(parseFunction());
            else if (t.isIdent("modifier") || t.isIdent("event") || t.isIdent("using")
                     || t.isIdent("fallback") || t.isIdent("receive"))
                fail_unsupported(t.loc, "declaration '" + t.text + "'");
            else
                c.variables.push_back(parseStateVariable());
        }
        return c;
    }

    EnumDecl parseEnum()
    {
        EnumDecl e;
        e.loc = peek().loc;
        next(); // enum
        e.name = expectIdent("enum name");
        expectPunct("{");
        while (true) {
            e.values.push_back(expectIdent("enum value"));
            if (!acceptPunct(","))
                break;
        }
        expectPunct("}");
        if (e.values.empty())
            fail_syntax(e.loc, "empty enum");
        return e;
    }

    StructDecl parseStruct()
    {
        StructDecl s;
        s.loc = peek().loc;
        next(); // struct
        s.name = expectIdent("struct name");
        expectPunct("{");
        while (!acceptPunct("}")) {
            VariableDeclaration v;
            v.loc = peek().loc;
            v.type = parseTypeRequired();
            v.name = expectIdent("member name");
            checkUserName(v.name, v.loc);
            expectPunct(";");
            s.members.push_back(std::move(v));
        }
        return s;
    }

    VariableDeclaration parseStateVariable()
    {
        VariableDeclaration v;
        v.loc = peek().loc;
        v.type = parseTypeRequired();
        while (peek().kind == Token::Kind::Identifier) {
            const std::string& w = peek().text;
            if (w == "private" || w == "internal") {
                next();
                continue;
            }
            if (w == "public" || w == "constant")
                fail_unsupported(peek().loc, "'" + w + "' state variable");
            break;
        }
        v.name = expectIdent("state variable name");
        checkUserName(v.name, v.loc);
        if (peek().isPunct("="))
            fail_unsupported(peek().loc, "state variable initializer");
        expectPunct(";");
        return v;
    }

    FunctionDeclaration parseFunction()
    {
        FunctionDeclaration f;
        f.loc = peek().loc;
        if (acceptIdent("constructor")) {
            f.isConstructor = true;
            f.name = "constructor";
        } else {
            next(); // function
            f.name = expectIdent("function name");
            checkUserName(f.name, f.loc);
            if (kReservedMemberNames.count(f.name) || f.name == "constructor")
                fail_unsupported(f.loc, "function named '" + f.name + "'");
        }
        f.inParams = parseParamList(/*isOut=*/false);
        bool sawVisibility = false;
        while (peek().kind == Token::Kind::Identifier) {
            const std::string& w = peek().text;
            if (w == "public" || w == "external") {
                f.visibility = Visibility::Public;
                sawVisibility = true;
                next();
            } else if (w == "private" || w == "internal") {
                f.visibility = Visibility::Private;
                sawVisibility = true;
                next();
            } else if (w == "payable") {
                f.isPayable = true;
                next();
            } else if (w == "view" || w == "pure") {
                next(); // accepted and ignored
            } else if (w == "returns") {
                break;
            } else {
                fail_unsupported(peek().loc, "function modifier '" + w + "'");
            }
        }
        (void)sawVisibility; // unspecified visibility defaults to public
        if (acceptIdent("returns"))
            f.outParams = parseParamList(/*isOut=*/true);
        f.body = parseBlock();
        return f;
    }

    std::vector<LocalVariableDeclaration> parseParamList(bool isOut)
    {
        std::vector<LocalVariableDeclaration> params;
        expectPunct("(");
        if (acceptPunct(")"))
            return params;
        int unnamed = 0;
        while (true) {
            LocalVariableDeclaration d;
            SourceLoc loc = peek().loc;
            d.variable.loc = loc;
            d.variable.type = parseTypeRequired();
            d.dataLocation = parseDataLocation();
            if (peek().kind == Token::Kind::Identifier && !peek().isIdent("memory")
                && !peek().isIdent("storage")) {
                d.variable.name = next().text;
                checkUserName(d.variable.name, loc);
            } else {
                d.variable.name = (isOut ? "$ret" : "$arg") + std::to_string(unnamed++);
            }
            finishLocalDecl(d, loc, isOut);
            params.push_back(std::move(d));
            if (acceptPunct(")"))
                break;
            expectPunct(",");
        }
        return params;
    }

    DataLocation parseDataLocation()
    {
        if (acceptIdent("memory"))
            return DataLocation::Memory;
        if (acceptIdent("storage"))
            return DataLocation::Storage;
        if (peek().isIdent("calldata"))
            fail_unsupported(peek().loc, "calldata location");
        return DataLocation::None;
    }

    // Shared checks for params and local declarations. Named types may still
    // be unresolved here (`C x` could be a contract or a struct); the type
    // checker re-validates locations after resolution.
    void finishLocalDecl(LocalVariableDeclaration& d, SourceLoc loc, bool isOut)
    {
        const TypePtr& t = d.variable.type;
        if (t->kind == TypeKind::Mapping)
            fail_type(loc, "mappings cannot be used as parameters or local variables");
        bool knownRef = t->kind == TypeKind::Array;
        bool knownValue = t->isElementary();
        if (knownRef && d.dataLocation == DataLocation::None)
            fail_syntax(loc, "reference-type variable needs an explicit data location");
        if (isOut && d.dataLocation == DataLocation::Storage)
            fail_type(loc, "storage location is not allowed for return parameters");
        if (knownValue && d.dataLocation != DataLocation::None)
            fail_syntax(loc, "data location given for value-type variable");
        d.isPointer = !knownValue && d.dataLocation != DataLocation::None;
    }

    // -- types ----------------------------------------------------------------

    // Speculative type parse; restores position and returns nullptr when the
    // tokens do not start a type.
    TypePtr parseTypeOpt()
    {
        size_t save = pos_;
        const Token& t = peek();
        TypePtr base;
        if (t.kind != Token::Kind::Identifier)
            return nullptr;
        const std::string& w = t.text;
        if (w == "uint" || w == "uint256") {
            next();
            base = type_uint();
        } else if (w == "int" || w == "int256") {
            next();
            base = type_int();
        } else if (w == "bool") {
            next();
            base = type_bool();
        } else if (w == "address") {
            next();
            base = type_address();
            acceptIdent("payable");
        } else if (w == "mapping") {
            next();
            expectPunct("(");
            TypePtr dom = parseTypeRequired();
            expectPunct("=>");
            TypePtr rng = parseTypeRequired();
            expectPunct(")");
            base = type_mapping(dom, rng);
        } else if (w.size() > 3 && (w.rfind("uint", 0) == 0 || w.rfind("int", 0) == 0)
                   && std::isdigit((unsigned char)w.back())) {
            fail_unsupported(t.loc, "integer width '" + w + "' (only uint256/int256)");
        } else if (w == "bytes" || w == "string" || w.rfind("bytes", 0) == 0) {
            fail_unsupported(t.loc, "type '" + w + "'");
        } else {
            // user-defined name: only a type if followed by a type-ish token
            next();
            base = type_struct(w); // placeholder kind; resolved by the type checker
        }
        // array suffixes
        while (peek().isPunct("[")) {
            if (peek(1).isPunct("]")) {
                next();
                next();
                base = type_array(base);
            } else if (peek(1).kind == Token::Kind::Number && peek(2).isPunct("]")) {
                U256 n;
                // a zero or malformed size means this is an index
                // expression, not a type suffix
                if (!parse_u256(peek(1).text, n) || n == 0)
                    break;
                next();
                next();
                next();
                base = type_array(base, n);
            } else {
                break; // an index expression, not a type suffix
            }
        }
        if (!base) {
            pos_ = save;
            return nullptr;
        }
        return base;
    }

    TypePtr parseTypeRequired()
    {
        TypePtr t = parseTypeOpt();
        if (!t)
            fail_syntax(peek().loc, "expected type, got '" + peek().text + "'");
        return t;
    }

    // -- statements ------------------------------------------------------------

    StmtList parseBlock()
    {
        expectPunct("{");
        StmtList out;
        while (!acceptPunct("}"))
            parseStatement(out);
        return out;
    }

    void parseStatement(StmtList& out)
    {
        const Token& t = peek();
        SourceLoc loc = t.loc;
        if (t.isPunct("{")) {
            StmtList inner = parseBlock();
            out.insert(out.end(), inner.begin(), inner.end());
            return;
        }
        if (t.isIdent("if")) {
            next();
            Stmt s;
            s.kind = Stmt::Kind::IfThenElse;
            s.loc = loc;
            expectPunct("(");
            s.condition = parseExpr();
            expectPunct(")");
            s.body = parseStatementOrBlock();
            if (acceptIdent("else"))
                s.elseBody = parseStatementOrBlock();
            out.push_back(make_stmt(std::move(s)));
            return;
        }
        if (t.isIdent("while")) {
            next();
            Stmt s;
            s.kind = Stmt::Kind::WhileLoop;
            s.loc = loc;
            expectPunct("(");
            s.condition = parseExpr();
            expectPunct(")");
            s.body = parseStatementOrBlock();
            out.push_back(make_stmt(std::move(s)));
            return;
        }
        if (t.isIdent("for") || t.isIdent("do"))
            fail_unsupported(loc, "'" + t.text + "' loop");
        if (t.isIdent("require")) {
            next();
            Stmt s;
            s.kind = Stmt::Kind::Require;
            s.loc = loc;
            expectPunct("(");
            s.condition = parseExpr();
            if (acceptPunct(","))
                fail_unsupported(peek().loc, "require message");
            expectPunct(")");
            expectPunct(";");
            out.push_back(make_stmt(std::move(s)));
            return;
        }
        if (t.isIdent("revert")) {
            next();
            Stmt s;
            s.kind = Stmt::Kind::Revert;
            s.loc = loc;
            if (acceptPunct("(")) {
                if (!peek().isPunct(")"))
                    fail_unsupported(peek().loc, "revert message");
                expectPunct(")");
            }
            expectPunct(";");
            out.push_back(make_stmt(std::move(s)));
            return;
        }
        if (t.isIdent("return")) {
            next();
            Stmt s;
            s.kind = Stmt::Kind::Return;
            s.loc = loc;
            if (!peek().isPunct(";")) {
                if (acceptPunct("(")) {
                    if (!acceptPunct(")")) {
                        while (true) {
                            s.args.push_back(parseExpr());
                            if (!acceptPunct(","))
                                break;
                        }
                        expectPunct(")");
                    }
                } else {
                    s.args.push_back(parseExpr());
                }
            }
            expectPunct(";");
            out.push_back(make_stmt(std::move(s)));
            return;
        }
        if (t.isIdent("delete") || t.isIdent("assembly") || t.isIdent("emit")
            || t.isIdent("throw") || t.isIdent("try"))
            fail_unsupported(loc, "'" + t.text + "' statement");

        // tuple assignment: ( a, b ) = call;
        if (t.isPunct("(")) {
            next();
            std::vector<ExprPtr> lhs;
            while (true) {
                lhs.push_back(parsePostfix());
                if (!acceptPunct(","))
                    break;
            }
            expectPunct(")");
            expectPunct("=");
            ExprPtr rhsExpr = parsePostfix();
            if (rhsExpr->kind != Expr::Kind::CallSuffix)
                fail_syntax(loc, "tuple assignment requires a function call");
            expectPunct(";");
            out.push_back(classifyCall(rhsExpr, lhs, loc));
            return;
        }

        // declaration?
        if (tryParseDeclaration(out, loc))
            return;

        // expression statement / assignment
        ExprPtr e = parsePostfix();
        if (peek().isPunct("=")) {
            next();
            parseAssignmentRhs(out, e, loc);
            return;
        }
        for (const char* op : {"+=", "-=", "*=", "/=", "%="}) {
            if (peek().isPunct(op)) {
                next();
                ExprPtr r = parseExpr();
                expectPunct(";");
                std::string binop(1, op[0]);
                Stmt s;
                s.kind = Stmt::Kind::Assignment;
                s.loc = loc;
                s.lhs = e;
                s.rhs = Expr::binary(binop, e, r, loc);
                out.push_back(make_stmt(std::move(s)));
                return;
            }
        }
        if (e->kind == Expr::Kind::CallSuffix) {
            expectPunct(";");
            out.push_back(classifyCall(e, {}, loc));
            return;
        }
        fail_syntax(peek().loc, "expected statement, got expression followed by '" + peek().text + "'");
    }

    StmtList parseStatementOrBlock()
    {
        if (peek().isPunct("{"))
            return parseBlock();
        StmtList out;
        parseStatement(out);
        return out;
    }

    bool tryParseDeclaration(StmtList& out, SourceLoc loc)
    {
        size_t save = pos_;
        TypePtr ty = parseTypeOpt();
        if (!ty) {
            pos_ = save;
            return false;
        }
        DataLocation dl = parseDataLocation();
        if (peek().kind != Token::Kind::Identifier) {
            pos_ = save;
            return false;
        }
        // `x = 1;` parses as type `x` followed by nothing useful; only accept
        // as declaration when a variable name follows the type.
        LocalVariableDeclaration d;
        d.variable.loc = loc;
        d.variable.type = ty;
        d.dataLocation = dl;
        d.variable.name = next().text;
        if (!opts_.solidMode)
            checkUserName(d.variable.name, loc);
        if (!peek().isPunct("=") && !peek().isPunct(";")) {
            pos_ = save;
            return false;
        }
        finishLocalDecl(d, loc, /*isOut=*/false);
        Stmt declStmt;
        declStmt.kind = Stmt::Kind::VariableDeclarationStatement;
        declStmt.loc = loc;
        declStmt.decl = d;
        out.push_back(make_stmt(std::move(declStmt)));
        if (acceptPunct("=")) {
            ExprPtr lhs = Expr::ident(d.variable.name, loc);
            parseAssignmentRhs(out, lhs, loc);
        } else {
            if (d.isPointer && d.dataLocation == DataLocation::Storage)
                fail_type(loc, "storage pointer must be initialised at declaration");
            expectPunct(";");
        }
        return true;
    }

    // Parses everything after `lhs =`, classifying new-forms and calls.
    void parseAssignmentRhs(StmtList& out, ExprPtr lhs, SourceLoc loc)
    {
        if (peek().isIdent("new")) {
            next();
            auto e = std::make_shared<Expr>();
            e->kind = Expr::Kind::NewSuffix;
            e->loc = loc;
            e->newType = parseTypeRequired();
            expectPunct("(");
            if (!acceptPunct(")")) {
                while (true) {
                    e->args.push_back(parseExpr());
                    if (!acceptPunct(","))
                        break;
                }
                expectPunct(")");
            }
            expectPunct(";");
            Stmt s;
            s.kind = Stmt::Kind::Assignment;
            s.loc = loc;
            s.lhs = std::move(lhs);
            s.rhs = std::move(e);
            out.push_back(make_stmt(std::move(s)));
            return;
        }
        ExprPtr r;
        if (peek().isPunct("!") || peek().isPunct("-")) {
            r = parseExpr();
            expectPunct(";");
            Stmt s;
            s.kind = Stmt::Kind::Assignment;
            s.loc = loc;
            s.lhs = std::move(lhs);
            s.rhs = std::move(r);
            out.push_back(make_stmt(std::move(s)));
            return;
        }
        r = parsePostfix();
        if (r->kind == Expr::Kind::CallSuffix) {
            expectPunct(";");
            out.push_back(classifyCall(r, {lhs}, loc));
            return;
        }
        r = parseBinaryContinuation(r);
        expectPunct(";");
        Stmt s;
        s.kind = Stmt::Kind::Assignment;
        s.loc = loc;
        s.lhs = std::move(lhs);
        s.rhs = std::move(r);
        out.push_back(make_stmt(std::move(s)));
    }

    // Turns a parsed CallSuffix expression into the matching statement node.
    StmtPtr classifyCall(const ExprPtr& call, std::vector<ExprPtr> lhs, SourceLoc loc)
    {
        ExprPtr base = call->base;
        std::vector<ExprPtr> args = call->args;

        // nested form: base is itself a call -> `X.value(v)(args)`
        ExprPtr valueExpr;
        if (base && base->kind == Expr::Kind::CallSuffix) {
            ExprPtr inner = base->base;
            if (inner && inner->kind == Expr::Kind::Member && inner->name == "value") {
                if (base->args.size() != 1)
                    fail_syntax(loc, ".value expects one argument");
                valueExpr = base->args[0];
                base = inner->base;
                // fall through with `base` = X (either `addr.call` or `c.f`)
            } else {
                fail_syntax(loc, "chained call expression");
            }
        }

        if (base && base->kind == Expr::Kind::Member) {
            const std::string& m = base->name;
            if (m == "call") {
                Stmt s;
                s.kind = Stmt::Kind::Call;
                s.loc = loc;
                s.address = base->base;
                s.value = valueExpr ? valueExpr : Expr::num(0, loc);
                // the empty string payload was already dropped by parsePostfix
                if (!args.empty())
                    fail_unsupported(loc, "call with a non-empty payload");
                if (lhs.size() != 1)
                    fail_syntax(loc, "the result of .call must be assigned to a bool");
                s.lhs = lhs[0];
                return make_stmt(std::move(s));
            }
            if (m == "send") {
                if (valueExpr)
                    fail_syntax(loc, ".value is not applicable to send");
                if (args.size() != 1)
                    fail_syntax(loc, "send expects one argument");
                if (lhs.size() != 1)
                    fail_syntax(loc, "the result of send must be assigned to a bool");
                Stmt s;
                s.kind = Stmt::Kind::Send;
                s.loc = loc;
                s.lhs = lhs[0];
                s.source = Expr::ident("this", loc);
                s.dest = base->base;
                s.value = args[0];
                return make_stmt(std::move(s));
            }
            if (m == "transfer") {
                if (valueExpr)
                    fail_syntax(loc, ".value is not applicable to transfer");
                if (args.size() != 1)
                    fail_syntax(loc, "transfer expects one argument");
                if (!lhs.empty())
                    fail_syntax(loc, "transfer has no result");
                Stmt s;
                s.kind = Stmt::Kind::Transfer;
                s.loc = loc;
                s.source = Expr::ident("this", loc);
                s.dest = base->base;
                s.value = args[0];
                return make_stmt(std::move(s));
            }
            if (m == "push") {
                if (valueExpr)
                    fail_syntax(loc, ".value is not applicable to push");
                if (args.size() != 1)
                    fail_syntax(loc, "push expects one argument");
                if (!lhs.empty())
                    fail_unsupported(loc, "using the result of push");
                Stmt s;
                s.kind = Stmt::Kind::Push;
                s.loc = loc;
                s.array = base->base;
                s.arg = args[0];
                return make_stmt(std::move(s));
            }
            // Verification.* primitives
            if (base->base && base->base->kind == Expr::Kind::Identifier
                && base->base->name == "Verification") {
                if (valueExpr)
                    fail_syntax(loc, ".value is not applicable here");
                if (!lhs.empty())
                    fail_syntax(loc, "verification primitives have no result");
                if (m == "Assume" || m == "Assert") {
                    if (args.size() != 1)
                        fail_syntax(loc, m + " expects one argument");
                    Stmt s;
                    s.kind = m == "Assume" ? Stmt::Kind::VAssume : Stmt::Kind::VAssert;
                    s.loc = loc;
                    s.condition = args[0];
                    return make_stmt(std::move(s));
                }
                if (m.rfind("CexPrint_", 0) == 0) {
                    if (args.size() != 1)
                        fail_syntax(loc, "CexPrint functions expect one argument");
                    Stmt s;
                    s.kind = Stmt::Kind::CexPrint;
                    s.loc = loc;
                    s.funcName = m;
                    s.arg = args[0];
                    return make_stmt(std::move(s));
                }
                fail_unsupported(loc, "Verification." + m);
            }
            // contract call: target.func(args)
            Stmt s;
            s.kind = Stmt::Kind::ContractCall;
            s.loc = loc;
            s.callLhs = std::move(lhs);
            s.target = base->base;
            s.funcName = m;
            s.args = std::move(args);
            s.value = valueExpr ? valueExpr : Expr::num(0, loc);
            return make_stmt(std::move(s));
        }

        if (base && base->kind == Expr::Kind::Identifier) {
            // plain f(args): a call on this contract
            Stmt s;
            s.kind = Stmt::Kind::ContractCall;
            s.loc = loc;
            s.callLhs = std::move(lhs);
            s.target = Expr::ident("this", loc);
            s.funcName = base->name;
            s.args = std::move(args);
            s.value = valueExpr ? valueExpr : Expr::num(0, loc);
            return make_stmt(std::move(s));
        }
        fail_syntax(loc, "unsupported call form");
    }

    // -- expressions -------------------------------------------------------------

    ExprPtr parseExpr()
    {
        ExprPtr e = parseOr();
        if (e->kind == Expr::Kind::CallSuffix)
            fail_syntax(e->loc, "function calls cannot be used as expressions");
        return e;
    }

    ExprPtr parseBinaryContinuation(ExprPtr first)
    {
        // `first` was parsed as a postfix expression; continue with binary
        // operators at full precedence.
        ExprPtr e = continueMul(first);
        e = continueAdd(e);
        e = continueCmp(e);
        e = continueAnd(e);
        e = continueOr(e);
        return e;
    }

    ExprPtr parseOr() { return continueOr(parseAnd()); }
    ExprPtr continueOr(ExprPtr e)
    {
        while (peek().isPunct("||")) {
            SourceLoc loc = next().loc;
            e = Expr::binary("||", e, parseAnd(), loc);
        }
        return e;
    }
    ExprPtr parseAnd() { return continueAnd(parseCmp()); }
    ExprPtr continueAnd(ExprPtr e)
    {
        while (peek().isPunct("&&")) {
            SourceLoc loc = next().loc;
            e = Expr::binary("&&", e, parseCmp(), loc);
        }
        return e;
    }
    ExprPtr parseCmp() { return continueCmp(parseAdd()); }
    ExprPtr continueCmp(ExprPtr e)
    {
        for (const char* op : {"==", "!=", "<=", ">=", "<", ">"}) {
            if (peek().isPunct(op)) {
                SourceLoc loc = next().loc;
                return Expr::binary(op, e, parseAdd(), loc);
            }
        }
        return e;
    }
    ExprPtr parseAdd() { return continueAdd(parseMul()); }
    ExprPtr continueAdd(ExprPtr e)
    {
        while (peek().isPunct("+") || peek().isPunct("-")) {
            std::string op = peek().text;
            SourceLoc loc = next().loc;
            e = Expr::binary(op, e, parseMul(), loc);
        }
        return e;
    }
    ExprPtr parseMul() { return continueMul(parseUnary()); }
    ExprPtr continueMul(ExprPtr e)
    {
        while (peek().isPunct("*") || peek().isPunct("/") || peek().isPunct("%")) {
            std::string op = peek().text;
            SourceLoc loc = next().loc;
            e = Expr::binary(op, e, parseUnary(), loc);
        }
        return e;
    }
    ExprPtr parseUnary()
    {
        if (peek().isPunct("!") || peek().isPunct("-")) {
            std::string op = peek().text;
            SourceLoc loc = next().loc;
            return Expr::unary(op, parseUnary(), loc);
        }
        return parsePostfix();
    }

    ExprPtr parsePostfix()
    {
        ExprPtr e = parsePrimary();
        while (true) {
            if (peek().isPunct(".")) {
                SourceLoc loc = next().loc;
                std::string field = expectIdent("member name");
                e = Expr::member(e, field, loc);
            } else if (peek().isPunct("[")) {
                SourceLoc loc = next().loc;
                ExprPtr idx = parseExpr();
                expectPunct("]");
                e = Expr::indexOf(e, idx, loc);
            } else if (peek().isPunct("(")) {
                SourceLoc loc = next().loc;
                auto c = std::make_shared<Expr>();
                c->kind = Expr::Kind::CallSuffix;
                c->loc = loc;
                c->base = e;
                if (!acceptPunct(")")) {
                    while (true) {
                        if (peek().kind == Token::Kind::String) {
                            // only the empty low-level call payload is accepted
                            if (!next().text.empty())
                                fail_unsupported(loc, "string argument");
                        } else {
                            c->args.push_back(parseExpr());
                        }
                        if (!acceptPunct(","))
                            break;
                    }
                    expectPunct(")");
                }
                e = c;
            } else {
                break;
            }
        }
        return e;
    }

    ExprPtr parsePrimary()
    {
        const Token& t = peek();
        if (t.isPunct("(")) {
            next();
            ExprPtr e = parseExpr();
            expectPunct(")");
            return e;
        }
        if (t.kind == Token::Kind::Number) {
            next();
            U256 v;
            if (!parse_u256(t.text, v))
                fail_syntax(t.loc, "number literal out of range");
            return Expr::num(v, t.loc);
        }
        if (t.kind == Token::Kind::Identifier) {
            if (t.text == "true" || t.text == "false") {
                next();
                return Expr::boolean(t.text == "true", t.loc);
            }
            if (t.text == "new")
                fail_syntax(t.loc, "'new' is only allowed as the whole right-hand side of an assignment");
            if (t.text == "now")
                fail_unsupported(t.loc, "'now' (use block.timestamp)");
            next();
            return Expr::ident(t.text, t.loc);
        }
        fail_syntax(t.loc, "expected expression, got '" + t.text + "'");
    }

    void checkUserName(const std::string& name, SourceLoc loc)
    {
        if (!opts_.solidMode && !name.empty() && name[0] == '$')
            fail_syntax(loc, "identifiers starting with '$' are reserved");
    }

    // -- new-form resolution ---------------------------------------------------

    // Rewrites `lhs = new T(...)` assignments into CreateContract or
    // AllocMemory once all contract names are known.
    void resolveNewForms(Program& p)
    {
        for (auto& c : p.contracts)
            for (auto& f : c.functions)
                f.body = resolveNewInList(f.body);
    }

    StmtList resolveNewInList(const StmtList& in)
    {
        StmtList out;
        for (const StmtPtr& sp : in) {
            if (sp->kind == Stmt::Kind::WhileLoop || sp->kind == Stmt::Kind::IfThenElse) {
                Stmt s = *sp;
                s.body = resolveNewInList(sp->body);
                s.elseBody = resolveNewInList(sp->elseBody);
                out.push_back(make_stmt(std::move(s)));
                continue;
            }
            if (sp->kind == Stmt::Kind::Assignment && sp->rhs
                && sp->rhs->kind == Expr::Kind::NewSuffix) {
                resolveNewAssignment(*sp, out);
                continue;
            }
            out.push_back(sp);
        }
        return out;
    }

    void resolveNewAssignment(const Stmt& s, StmtList& out)
    {
        const Expr& n = *s.rhs;
        TypePtr ty = n.newType;
        if (ty->kind == TypeKind::Struct && contractNames_.count(ty->name)) {
            Stmt cr;
            cr.kind = Stmt::Kind::CreateContract;
            cr.loc = s.loc;
            cr.lhs = s.lhs;
            cr.type = type_contract(ty->name);
            cr.args = n.args;
            cr.value = Expr::num(0, s.loc);
            out.push_back(make_stmt(std::move(cr)));
            return;
        }
        // memory allocation; arrays take an optional length
        ExprPtr len;
        if (ty->kind == TypeKind::Array) {
            if (n.args.size() > 1)
                fail_syntax(s.loc, "new array takes at most one length argument");
            if (n.args.size() == 1)
                len = n.args[0];
        } else if (!n.args.empty()) {
            fail_syntax(s.loc, "new on a struct takes no arguments");
        }
        Stmt alloc;
        alloc.kind = Stmt::Kind::AllocMemory;
        alloc.loc = s.loc;
        alloc.lhs = s.lhs;
        alloc.type = ty;
        out.push_back(make_stmt(std::move(alloc)));
        bool zeroLen = len && len->kind == Expr::Kind::NumberLit && len->number == 0;
        if (len && !zeroLen) {
            Stmt st;
            st.kind = Stmt::Kind::Assignment;
            st.loc = s.loc;
            st.lhs = Expr::member(s.lhs, "length", s.loc);
            st.rhs = len;
            st.solidLength = true; // fresh array: plain length write
            out.push_back(make_stmt(std::move(st)));
        }
    }
};

StmtList mark_length_writes_plain(const StmtList& in)
{
    StmtList out;
    for (const StmtPtr& sp : in) {
        Stmt s = *sp;
        s.body = mark_length_writes_plain(sp->body);
        s.elseBody = mark_length_writes_plain(sp->elseBody);
        if (s.kind == Stmt::Kind::Assignment && s.lhs && s.lhs->kind == Expr::Kind::Member
            && s.lhs->name == "length")
            s.solidLength = true;
        out.push_back(make_stmt(std::move(s)));
    }
    return out;
}

} // namespace

ast::Program parse_program(const std::string& source, const ParseOptions& opts)
{
    LexOptions lo;
    lo.allowDollarNames = opts.solidMode;
    Parser parser(lex(source, lo), opts);
    Program p = parser.run();
    if (opts.solidMode) {
        // Tool output has no resizing sugar left: length writes are plain.
        for (auto& c : p.contracts)
            for (auto& f : c.functions)
                f.body = mark_length_writes_plain(f.body);
    }
    return p;
}

} // namespace solidbmc::frontend
