// solidbmc: bounded model checking toolchain for a Solidity subset
// Copyright 2026 The solidbmc Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace solidbmc {

// All machine words are 256 bits wide. Unsigned values use the natural
// representation; signed values are the two's-complement reading of the
// same 256-bit pattern.
using U256 = boost::multiprecision::uint256_t;
using Wide = boost::multiprecision::int512_t;

inline const U256& u256_max()
{
    static const U256 v = (std::numeric_limits<U256>::max)();
    return v;
}

// 2^255, the sign bit.
inline const U256& u256_sign_bit()
{
    static const U256 v = U256(1) << 255;
    return v;
}

// 2^160 - 1: addresses are 160-bit unsigned integers.
inline const U256& address_max()
{
    static const U256 v = (U256(1) << 160) - 1;
    return v;
}

inline bool int_negative(const U256& bits) { return (bits & u256_sign_bit()) != 0; }

// Two's-complement value of a 256-bit pattern as a 512-bit signed integer.
Wide int_signed(const U256& bits);
// Wrap an arbitrary-width signed value back into 256 bits.
U256 int_wrap(const Wide& v);

// Truncating (round-toward-zero) signed division/remainder, EVM style.
// Division by zero must be excluded by the caller.
U256 int_div(const U256& a, const U256& b);
U256 int_mod(const U256& a, const U256& b);

int int_compare(const U256& a, const U256& b);

std::string u256_to_string(const U256& v);
std::string int_to_string(const U256& bits);
// Parses a decimal or 0x-prefixed literal; returns false on overflow or
// malformed input.
bool parse_u256(const std::string& text, U256& out);

} // namespace solidbmc
