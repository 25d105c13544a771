#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace banarith {

using Integer = mpz_class;
using Rational = mpq_class;

/// Canonical "num/den" text form; the denominator is always written.
std::string to_string(const Rational& q);
std::string to_string(const Integer& n);

/// Accepts "n", "-n", "n/d". Throws Error(Validation) on anything else,
/// including decimal points and zero denominators.
Rational parse_rational(std::string_view text);
Integer parse_integer(std::string_view text);

Rational pow(const Rational& base, long exponent);
Integer pow(const Integer& base, unsigned long exponent);

inline Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }
inline Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

/// Multiplicity of the prime p in n; n must be nonzero.
unsigned long valuation(const Integer& n, const Integer& p);

bool is_prime(const Integer& n);

/// Distance from q to the nearest integer.
Rational distance_to_integer(const Rational& q);

/// Representative of q modulo 1 in [0, 1).
Rational fractional_part(const Rational& q);

}  // namespace banarith
