#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace ddr {

using Rational = mpq_class;

/// Accepts `p/q` or an integer; the result is canonicalized.
Rational parse_rational(std::string_view text);

/// Always `p/q` form, e.g. "1/2", "1/1".
std::string format_rational(const Rational& q);

}  // namespace ddr
