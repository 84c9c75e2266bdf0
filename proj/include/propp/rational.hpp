#pragma once

#include <gmpxx.h>

#include <string>

namespace propp {

// Exact arithmetic types. mpq_class keeps values canonical (reduced,
// positive denominator), which is exactly the BigRational contract.
using Int = mpz_class;
using Rational = mpq_class;

// gmpxx has no long long overloads; long is 64-bit on every platform we
// build for, so route through it.
static_assert(sizeof(long) >= 8, "64-bit long required");

inline Int to_int(long long v) { return Int(static_cast<long>(v)); }
inline Rational to_rational_ll(long long v) { return Rational(static_cast<long>(v)); }

/// Fixed-point decimal rendering with `digits` places after the point,
/// rounding half away from zero. Deterministic across platforms.
std::string decimal_string(const Rational& q, int digits);

/// "num/den" in lowest terms (den printed even when 1).
std::string fraction_string(const Rational& q);

double to_double(const Rational& q);

}  // namespace propp
