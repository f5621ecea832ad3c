#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace los {

// Every certificate quantity is an exact rational in canonical reduced form:
// gcd(|num|, den) = 1 and den > 0. mpq_class arithmetic preserves canonical
// form, and the constructors below canonicalize their inputs.
using Rational = mpq_class;
using BigInt = mpz_class;

Rational make_rational(const BigInt& num, const BigInt& den);
Rational make_rational(std::int64_t num, std::int64_t den);

// 1 / v^2; v may exceed the 32-bit range, so square in BigInt.
Rational inv_square(std::int64_t v);

// Canonical wire form "num/den" in lowest terms; zero serializes as "0/1".
std::string to_fraction_string(const Rational& q);

// Accepts "num/den" or a bare integer literal. Throws std::invalid_argument
// on malformed input or a zero denominator.
Rational parse_rational(std::string_view s);

// Sum of 1/a(i)^2 over the closed index range [lo, hi] (0 when lo > hi).
// Balanced divide-and-conquer keeps operand sizes even, which matters once
// block denominators grow to thousands of digits.
template <typename AccessFn>
Rational sum_inv_squares(std::int64_t lo, std::int64_t hi, AccessFn&& a) {
    if (lo > hi) return Rational(0);
    if (hi - lo < 8) {
        Rational s = inv_square(a(lo));
        for (std::int64_t i = lo + 1; i <= hi; ++i) s += inv_square(a(i));
        return s;
    }
    const std::int64_t mid = lo + (hi - lo) / 2;
    return sum_inv_squares(lo, mid, a) + sum_inv_squares(mid + 1, hi, a);
}

}  // namespace los
