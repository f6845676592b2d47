// solidbmc: bounded model checking toolchain for a Solidity subset
// Copyright 2026 The solidbmc Authors.
// SPDX-License-Identifier: Apache-2.0
#include "support/numeric.hpp"

namespace solidbmc {

Wide int_signed(const U256& bits)
{
    Wide v = Wide(bits);
    if (int_negative(bits))
        v -= Wide(1) << 256;
    return v;
}

U256 int_wrap(const Wide& v)
{
    static const Wide modulus = Wide(1) << 256;
    Wide r = v % modulus;
    if (r < 0)
        r += modulus;
    return U256(r);
}

U256 int_div(const U256& a, const U256& b)
{
    // boost division on integers truncates toward zero already.
    Wide q = int_signed(a) / int_signed(b);
    return int_wrap(q);
}

U256 int_mod(const U256& a, const U256& b)
{
    Wide r = int_signed(a) % int_signed(b);
    return int_wrap(r);
}

int int_compare(const U256& a, const U256& b)
{
    Wide sa = int_signed(a), sb = int_signed(b);
    if (sa < sb) return -1;
    if (sa > sb) return 1;
    return 0;
}

std::string u256_to_string(const U256& v)
{
    return v.str();
}

std::string int_to_string(const U256& bits)
{
    return int_signed(bits).str();
}

bool parse_u256(const std::string& text, U256& out)
{
    if (text.empty())
        return false;
    try {
        boost::multiprecision::cpp_int v;
        if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X'))
            v = boost::multiprecision::cpp_int(text);
        else {
            for (char c : text)
                if (c < '0' || c > '9')
                    return false;
            v = boost::multiprecision::cpp_int(text);
        }
        if (v < 0 || v > boost::multiprecision::cpp_int(u256_max()))
            return false;
        out = U256(v);
        return true;
    } catch (...) {
        return false;
    }
}

} // namespace solidbmc
