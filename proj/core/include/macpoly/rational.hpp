#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace macpoly {

using BigInt = mpz_class;
using Rational = mpq_class;

// Parses "p", "p/q" or "-p/q"; throws InvalidInput on garbage or zero denominator.
Rational parse_rational(std::string_view s);
std::string to_string(const Rational& r);
std::string to_string(const BigInt& z);

inline bool is_zero(const BigInt& z) { return sgn(z) == 0; }
inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

}  // namespace macpoly
