#ifndef QHCYCLE_RATIONAL_HPP
#define QHCYCLE_RATIONAL_HPP

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace qhcycle {

/// Exact rational backed by GMP. All symbolic layers work over this type.
using Rational = mpq_class;

/// "num" or "num/den" in lowest terms.
std::string to_string(const Rational& value);

/// Parses "num" or "num/den" exactly. Decimal points, exponents and
/// whitespace are rejected. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

inline int sign(const Rational& value) { return sgn(value); }

}  // namespace qhcycle

#endif
