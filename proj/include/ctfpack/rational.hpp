#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace ctfpack {

/// Exact rational, always canonical (reduced, positive denominator).
using Rational = mpq_class;

/// "p/q" with an explicit denominator, also for integers ("6/1").
std::string to_fraction(const Rational& r);

/// "p/q (0.2500)" for human-facing logs.
std::string to_human(const Rational& r, int digits = 4);

/// Accepts "p/q" or "p"; throws std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

} // namespace ctfpack
