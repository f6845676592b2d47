// solidbmc: bounded model checking toolchain for a Solidity subset
// Copyright 2026 The solidbmc Authors.
// SPDX-License-Identifier: Apache-2.0
#include "ivl/checker.hpp"

#include <cctype>
#include <map>
#include <set>
#include <stdexcept>

namespace solidbmc::ivl {

namespace {

struct Tok {
    enum class Kind { Ident, Number, Punct, End };
    Kind kind;
    std::string text;
    int line;
};

class CheckError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::vector<Tok> lex(const std::string& src)
{
    std::vector<Tok> out;
    size_t i = 0;
    int line = 1;
    auto isIdent = [](char c) {
        return std::isalnum((unsigned char)c) || c == '_' || c == '$' || c == '\'';
    };
    const char* puncts[] = {"==>", ":=", "==", "!=", "<=", ">=", "&&", "||", "::",
                            "(", ")", "[", "]", "{", "}", ",", ";", ":", ".",
                            "<", ">", "+", "-", "*", "!", "=", };
    while (i < src.size()) {
        char c = src[i];
        if (c == '\n') {
            ++line;
            ++i;
            continue;
        }
        if (std::isspace((unsigned char)c)) {
            ++i;
            continue;
        }
        if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
            while (i < src.size() && src[i] != '\n')
                ++i;
            continue;
        }
        if (std::isalpha((unsigned char)c) || c == '_' || c == '$') {
            size_t j = i;
            while (j < src.size() && isIdent(src[j]))
                ++j;
            // a type tag may carry [] suffixes: merge `uint[]`, `uint[][]`
            while (j + 1 < src.size() && src[j] == '[' && src[j + 1] == ']')
                j += 2;
            std::string text = src.substr(i, j - i);
            out.push_back({Tok::Kind::Ident, text, line});
            i = j;
            continue;
        }
        if (std::isdigit((unsigned char)c)) {
            size_t j = i;
            while (j < src.size() && std::isdigit((unsigned char)src[j]))
                ++j;
            out.push_back({Tok::Kind::Number, src.substr(i, j - i), line});
            i = j;
            continue;
        }
        bool matched = false;
        for (const char* p : puncts) {
            size_t n = std::char_traits<char>::length(p);
            if (src.compare(i, n, p) == 0) {
                out.push_back({Tok::Kind::Punct, p, line});
                i += n;
                matched = true;
                break;
            }
        }
        if (!matched)
            throw CheckError("line " + std::to_string(line) + ": unexpected character '"
                             + std::string(1, c) + "'");
    }
    out.push_back({Tok::Kind::End, "", line});
    return out;
}

const std::set<std::string> kKeywords = {
    "enum", "record", "var", "procedure", "returns", "if", "else", "while", "assume",
    "assert", "havoc", "call", "return", "forall", "const", "unique", "type", "then",
    "div", "mod", "true", "false", "int", "bool",
};

const std::set<std::string> kBuiltinTypes = {"int", "bool", "UInt", "Int", "Ref", "Address"};

class Checker {
public:
    explicit Checker(const std::string& text)
        : toks_(lex(text))
    {
    }

    CheckResult run()
    {
        CheckResult res;
        try {
            collectPass();
            pos_ = 0;
            checkPass();
        } catch (const CheckError& e) {
            res.ok = false;
            res.errors.push_back(e.what());
        }
        res.errors.insert(res.errors.end(), errors_.begin(), errors_.end());
        if (!errors_.empty())
            res.ok = false;
        return res;
    }

private:
    std::vector<Tok> toks_;
    size_t pos_ = 0;
    bool collecting_ = true;

    std::set<std::string> typeNames_;
    std::set<std::string> globalIdents_; // vars, consts, enum values
    std::set<std::string> recordMembers_;
    std::map<std::string, std::pair<size_t, size_t>> procs_; // name -> (ins, outs)
    std::vector<std::string> errors_;

    const Tok& peek(size_t k = 0) const
    {
        return toks_[std::min(pos_ + k, toks_.size() - 1)];
    }
    const Tok& next()
    {
        const Tok& t = toks_[pos_];
        if (t.kind != Tok::Kind::End)
            ++pos_;
        return t;
    }
    bool isPunct(const std::string& p, size_t k = 0) const
    {
        return peek(k).kind == Tok::Kind::Punct && peek(k).text == p;
    }
    bool isIdent(const std::string& w, size_t k = 0) const
    {
        return peek(k).kind == Tok::Kind::Ident && peek(k).text == w;
    }
    void expect(const std::string& p)
    {
        if (!isPunct(p))
            throw CheckError("line " + std::to_string(peek().line) + ": expected '" + p
                             + "', got '" + peek().text + "'");
        next();
    }
    std::string expectIdent(const char* what)
    {
        if (peek().kind != Tok::Kind::Ident)
            throw CheckError("line " + std::to_string(peek().line) + ": expected " + what
                             + ", got '" + peek().text + "'");
        return next().text;
    }
    void err(const std::string& msg)
    {
        errors_.push_back("line " + std::to_string(peek().line) + ": " + msg);
    }

    // ---- two passes over the token stream --------------------------------

    void collectPass()
    {
        collecting_ = true;
        pos_ = 0;
        while (peek().kind != Tok::Kind::End)
            topLevel();
    }

    void checkPass()
    {
        collecting_ = false;
        pos_ = 0;
        while (peek().kind != Tok::Kind::End)
            topLevel();
    }

    void topLevel()
    {
        if (isIdent("enum")) {
            next();
            std::string name = expectIdent("enum name");
            expect("=");
            expect("(");
            while (true) {
                std::string v = expectIdent("enum value");
                if (collecting_)
                    globalIdents_.insert(v);
                if (!isPunct(","))
                    break;
                next();
            }
            expect(")");
            expect(";");
            if (collecting_)
                typeNames_.insert(name);
            return;
        }
        if (isIdent("record")) {
            next();
            std::string name = expectIdent("record name");
            expect("=");
            expect("(");
            while (true) {
                std::string m = expectIdent("member name");
                expect(":");
                parseType();
                if (collecting_)
                    recordMembers_.insert(m);
                if (!isPunct(","))
                    break;
                next();
            }
            expect(")");
            expect(";");
            if (collecting_)
                typeNames_.insert(name);
            return;
        }
        if (isIdent("type")) {
            next();
            std::string name = expectIdent("type name");
            expect("=");
            parseType();
            expect(";");
            if (collecting_)
                typeNames_.insert(name);
            return;
        }
        if (isIdent("const")) {
            next();
            if (isIdent("unique"))
                next();
            std::string name = expectIdent("const name");
            expect(":");
            parseType();
            expect(";");
            if (collecting_)
                globalIdents_.insert(name);
            return;
        }
        if (isIdent("var")) {
            next();
            std::string name = expectIdent("variable name");
            expect(":");
            parseType();
            expect(";");
            if (collecting_)
                globalIdents_.insert(name);
            return;
        }
        if (isIdent("procedure")) {
            parseProcedure();
            return;
        }
        throw CheckError("line " + std::to_string(peek().line) + ": expected declaration, got '"
                         + peek().text + "'");
    }

    void parseType()
    {
        if (isPunct("[")) {
            next();
            parseType();
            expect("]");
            parseType();
            return;
        }
        if (isIdent("enum") || isIdent("record")) {
            next();
            expect("(");
            std::string n = expectIdent("type name");
            if (!collecting_ && !typeNames_.count(n))
                err("unknown type " + n);
            expect(")");
            return;
        }
        std::string n = expectIdent("type");
        if (!collecting_ && !kBuiltinTypes.count(n) && !typeNames_.count(n))
            err("unknown type " + n);
    }

    void parseProcedure()
    {
        next(); // procedure
        std::string name = expectIdent("procedure name");
        std::set<std::string> locals;
        size_t ins = 0, outs = 0;
        expect("(");
        if (!isPunct(")")) {
            while (true) {
                std::string p = expectIdent("parameter");
                expect(":");
                parseType();
                locals.insert(p);
                ++ins;
                if (!isPunct(","))
                    break;
                next();
            }
        }
        expect(")");
        if (isIdent("returns")) {
            next();
            expect("(");
            while (true) {
                std::string p = expectIdent("out parameter");
                expect(":");
                parseType();
                locals.insert(p);
                ++outs;
                if (!isPunct(","))
                    break;
                next();
            }
            expect(")");
        }
        if (collecting_)
            procs_[name] = {ins, outs};
        expect("{");
        while (isIdent("var")) {
            next();
            std::string v = expectIdent("local name");
            expect(":");
            parseType();
            expect(";");
            locals.insert(v);
        }
        parseStmts(locals);
        expect("}");
    }

    void parseStmts(std::set<std::string>& locals)
    {
        while (!isPunct("}"))
            parseStmt(locals);
    }

    void parseStmt(std::set<std::string>& locals)
    {
        if (isIdent("while") || isIdent("if")) {
            bool isIf = isIdent("if");
            next();
            expect("(");
            if (isPunct("*"))
                next();
            else
                parseExpr(locals);
            expect(")");
            expect("{");
            parseStmts(locals);
            expect("}");
            if (isIf && isIdent("else")) {
                next();
                if (isIdent("if")) {
                    parseStmt(locals); // else-if chain
                } else {
                    expect("{");
                    parseStmts(locals);
                    expect("}");
                }
            }
            return;
        }
        if (isIdent("assume") || isIdent("assert")) {
            next();
            parseExpr(locals);
            expect(";");
            return;
        }
        if (isIdent("havoc")) {
            next();
            parseLValue(locals);
            expect(";");
            return;
        }
        if (isIdent("return")) {
            next();
            expect(";");
            return;
        }
        if (isIdent("call")) {
            next();
            // optional result list: lvalues := name(...)
            size_t save = pos_;
            size_t results = 0;
            bool hasResults = false;
            {
                // tentative scan for `lv (, lv)* :=`
                size_t count = 0;
                bool okScan = true;
                while (true) {
                    if (peek().kind != Tok::Kind::Ident) {
                        okScan = false;
                        break;
                    }
                    next();
                    while (isPunct("[") || isPunct(".")) {
                        if (isPunct(".")) {
                            next();
                            expectIdent("member");
                        } else {
                            next();
                            skipExprTokens("]");
                            expect("]");
                        }
                    }
                    ++count;
                    if (isPunct(",")) {
                        next();
                        continue;
                    }
                    break;
                }
                if (okScan && isPunct(":=")) {
                    hasResults = true;
                    results = count;
                }
                pos_ = save;
            }
            if (hasResults) {
                for (size_t i = 0; i < results; ++i) {
                    parseLValue(locals);
                    if (i + 1 < results)
                        expect(",");
                }
                expect(":=");
            }
            std::string callee = expectIdent("procedure name");
            size_t args = 0;
            expect("(");
            if (!isPunct(")")) {
                while (true) {
                    parseExpr(locals);
                    ++args;
                    if (!isPunct(","))
                        break;
                    next();
                }
            }
            expect(")");
            expect(";");
            if (!collecting_) {
                auto it = procs_.find(callee);
                if (it == procs_.end())
                    err("call to undeclared procedure " + callee);
                else {
                    if (it->second.first != args)
                        err("procedure " + callee + " expects "
                            + std::to_string(it->second.first) + " arguments, got "
                            + std::to_string(args));
                    if (hasResults && it->second.second != results)
                        err("procedure " + callee + " returns "
                            + std::to_string(it->second.second) + " values, got "
                            + std::to_string(results));
                }
            }
            return;
        }
        // assignment: lvalue := expr ;
        parseLValue(locals);
        expect(":=");
        parseExpr(locals);
        expect(";");
    }

    // crude token skipper for the tentative call-result scan
    void skipExprTokens(const std::string& closer)
    {
        int depth = 0;
        while (peek().kind != Tok::Kind::End) {
            if (isPunct("[") || isPunct("("))
                ++depth;
            else if (isPunct(closer) && depth == 0)
                return;
            else if (isPunct("]") || isPunct(")"))
                --depth;
            next();
        }
    }

    void parseLValue(const std::set<std::string>& locals)
    {
        std::string base = expectIdent("assignable name");
        checkName(base, locals);
        while (true) {
            if (isPunct("[")) {
                next();
                parseExpr(locals);
                expect("]");
            } else if (isPunct(".")) {
                next();
                std::string m = expectIdent("member name");
                checkMember(m);
            } else {
                break;
            }
        }
    }

    void checkName(const std::string& n, const std::set<std::string>& locals)
    {
        if (collecting_)
            return;
        if (locals.count(n) || globalIdents_.count(n) || boundVars_.count(n))
            return;
        err("use of undeclared identifier " + n);
    }

    void checkMember(const std::string& m)
    {
        if (collecting_)
            return;
        static const std::set<std::string> builtins = {"type", "value", "balance", "members",
                                                       "storage", "time", "origin"};
        if (builtins.count(m) || recordMembers_.count(m))
            return;
        err("access to undeclared record member " + m);
    }

    std::set<std::string> boundVars_;

    // expressions: precedence-free validation walk
    void parseExpr(const std::set<std::string>& locals) { parseImplies(locals); }

    void parseImplies(const std::set<std::string>& locals)
    {
        parseOr(locals);
        while (isPunct("==>")) {
            next();
            parseOr(locals);
        }
    }
    void parseOr(const std::set<std::string>& locals)
    {
        parseAnd(locals);
        while (isPunct("||")) {
            next();
            parseAnd(locals);
        }
    }
    void parseAnd(const std::set<std::string>& locals)
    {
        parseCmp(locals);
        while (isPunct("&&")) {
            next();
            parseCmp(locals);
        }
    }
    void parseCmp(const std::set<std::string>& locals)
    {
        parseAdd(locals);
        for (const char* op : {"==", "!=", "<=", ">=", "<", ">"}) {
            if (isPunct(op)) {
                next();
                parseAdd(locals);
                return;
            }
        }
    }
    void parseAdd(const std::set<std::string>& locals)
    {
        parseMul(locals);
        while (isPunct("+") || isPunct("-")) {
            next();
            parseMul(locals);
        }
    }
    void parseMul(const std::set<std::string>& locals)
    {
        parseUnary(locals);
        while (isPunct("*") || isIdent("div") || isIdent("mod")) {
            next();
            parseUnary(locals);
        }
    }
    void parseUnary(const std::set<std::string>& locals)
    {
        if (isPunct("!")) {
            next();
            parseUnary(locals);
            return;
        }
        parsePostfix(locals);
    }
    void parsePostfix(const std::set<std::string>& locals)
    {
        parsePrimary(locals);
        while (true) {
            if (isPunct("[")) {
                next();
                parseExpr(locals);
                expect("]");
            } else if (isPunct(".")) {
                next();
                std::string m = expectIdent("member name");
                checkMember(m);
            } else {
                break;
            }
        }
    }
    void parsePrimary(const std::set<std::string>& locals)
    {
        if (isPunct("(")) {
            next();
            if (isIdent("forall")) {
                next();
                std::vector<std::string> bound;
                while (true) {
                    std::string v = expectIdent("quantified variable");
                    bound.push_back(v);
                    boundVars_.insert(v);
                    expect(":");
                    parseType();
                    if (!isPunct(","))
                        break;
                    next();
                }
                expect("::");
                parseExpr(locals);
                expect(")");
                for (const auto& v : bound)
                    boundVars_.erase(v);
                return;
            }
            if (isIdent("if")) {
                next();
                parseExpr(locals);
                if (!isIdent("then"))
                    throw CheckError("line " + std::to_string(peek().line)
                                     + ": expected 'then' in conditional expression");
                next();
                parseExpr(locals);
                if (!isIdent("else"))
                    throw CheckError("line " + std::to_string(peek().line)
                                     + ": expected 'else' in conditional expression");
                next();
                parseExpr(locals);
                expect(")");
                return;
            }
            parseExpr(locals);
            expect(")");
            return;
        }
        if (peek().kind == Tok::Kind::Number) {
            next();
            return;
        }
        if (isIdent("true") || isIdent("false")) {
            next();
            return;
        }
        if (peek().kind == Tok::Kind::Ident) {
            std::string n = next().text;
            checkName(n, locals);
            return;
        }
        throw CheckError("line " + std::to_string(peek().line) + ": expected expression, got '"
                         + peek().text + "'");
    }
};

} // namespace

CheckResult check_ivl(const std::string& text)
{
    return Checker(text).run();
}

} // namespace solidbmc::ivl
