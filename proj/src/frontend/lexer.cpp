// solidbmc: bounded model checking toolchain for a Solidity subset
// Copyright 2026 The solidbmc Authors.
// SPDX-License-Identifier: Apache-2.0
#include "frontend/lexer.hpp"

#include <cctype>

namespace solidbmc::frontend {

namespace {

bool ident_start(char c, bool dollar) { return std::isalpha((unsigned char)c) || c == '_' || (dollar && c == '$'); }
bool ident_char(char c) { return std::isalnum((unsigned char)c) || c == '_' || c == '$'; }

// Multi-character operators, longest first.
const char* kPuncts[] = {
    "==", "!=", "<=", ">=", "&&", "||", "+=", "-=", "*=", "/=", "%=", "=>",
    "(", ")", "{", "}", "[", "]", ";", ",", ".", "=", "<", ">", "+", "-", "*", "/", "%", "!",
    "^", "~", // only appear inside pragma directives, which are skipped
};

} // namespace

std::vector<Token> lex(const std::string& source, const LexOptions& opts)
{
    std::vector<Token> out;
    size_t i = 0;
    int line = 1, col = 1;

    auto advance = [&](size_t n) {
        for (size_t k = 0; k < n; ++k) {
            if (source[i + k] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        i += n;
    };

    while (i < source.size()) {
        char c = source[i];
        SourceLoc loc{line, col};
        if (std::isspace((unsigned char)c)) {
            advance(1);
            continue;
        }
        if (c == '/' && i + 1 < source.size() && source[i + 1] == '/') {
            while (i < source.size() && source[i] != '\n')
                advance(1);
            continue;
        }
        if (c == '/' && i + 1 < source.size() && source[i + 1] == '*') {
            advance(2);
            while (i + 1 < source.size() && !(source[i] == '*' && source[i + 1] == '/'))
                advance(1);
            if (i + 1 >= source.size())
                fail_syntax(loc, "unterminated block comment");
            advance(2);
            continue;
        }
        if (ident_start(c, opts.allowDollarNames)) {
            size_t j = i;
            while (j < source.size() && ident_char(source[j]))
                ++j;
            out.push_back({Token::Kind::Identifier, source.substr(i, j - i), loc});
            advance(j - i);
            continue;
        }
        if (std::isdigit((unsigned char)c)) {
            size_t j = i;
            if (c == '0' && j + 1 < source.size() && (source[j + 1] == 'x' || source[j + 1] == 'X')) {
                j += 2;
                while (j < source.size() && std::isxdigit((unsigned char)source[j]))
                    ++j;
            } else {
                while (j < source.size() && std::isdigit((unsigned char)source[j]))
                    ++j;
            }
            if (j < source.size() && ident_char(source[j]))
                fail_syntax(loc, "malformed number literal");
            out.push_back({Token::Kind::Number, source.substr(i, j - i), loc});
            advance(j - i);
            continue;
        }
        if (c == '"') {
            size_t j = i + 1;
            while (j < source.size() && source[j] != '"' && source[j] != '\n')
                ++j;
            if (j >= source.size() || source[j] != '"')
                fail_syntax(loc, "unterminated string literal");
            out.push_back({Token::Kind::String, source.substr(i + 1, j - i - 1), loc});
            advance(j - i + 1);
            continue;
        }
        bool matched = false;
        for (const char* p : kPuncts) {
            size_t n = std::char_traits<char>::length(p);
            if (source.compare(i, n, p) == 0) {
                out.push_back({Token::Kind::Punct, p, loc});
                advance(n);
                matched = true;
                break;
            }
        }
        if (!matched)
            fail_syntax(loc, std::string("unexpected character '") + c + "'");
    }
    out.push_back({Token::Kind::End, "", {line, col}});
    return out;
}

} // namespace solidbmc::frontend
