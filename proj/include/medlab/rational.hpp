#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace medlab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// "p/q" with q > 0 and gcd(p, q) = 1; integers are written "p/1".
std::string to_string(const Rational& r);

/// Accepts "p/q" or "p". Throws Error(kMalformedInput) on anything else or q = 0.
Rational parse_rational(std::string_view text);

/// 2^k as an exact rational; k may be negative.
Rational pow2(int k);

/// (-1)^n
inline int sign_pow(unsigned n) { return (n % 2 == 0) ? 1 : -1; }

}  // namespace medlab
