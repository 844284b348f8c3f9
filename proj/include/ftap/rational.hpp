#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace ftap {

/// Arbitrary-precision rational. gmpxx keeps results of arithmetic in
/// canonical form (gcd(|p|, q) = 1, q > 0); parse_rational canonicalizes input.
using Rational = mpq_class;

/// Parses "p/q", "p", "-p/q". Whitespace, decimals and zero denominators are
/// rejected with InputError.
Rational parse_rational(std::string_view text);

/// "p/q", or "p" when q = 1.
std::string to_string(const Rational& value);

inline int sign(const Rational& value) { return sgn(value); }

}  // namespace ftap
