#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace secantflow {

using Rational = mpq_class;

/// Parses "p/q" or an integer. Result is canonical (lowest terms, q > 0).
Rational parse_rational(std::string_view text);

/// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& value);

inline bool is_zero(const Rational& value) { return sgn(value) == 0; }

}  // namespace secantflow
