#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace alblab {

using Rational = mpq_class;

/// Parses "p/q", "p" or a finite decimal such as "-0.25".
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form; integers are written as "p/1".
std::string format_rational(Rational const &q);

inline bool is_zero(Rational const &q) { return sgn(q) == 0; }

} // namespace alblab
