#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace mventropy {

using Rational = mpq_class;

/// Parses "p/q", "p" or a plain decimal such as "0.25" into a canonical
/// rational. Throws ParseError on anything else.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" (or "p" for integers).
std::string to_string(const Rational& value);

/// p/q in lowest terms. Raw mpq_class(p, q) is not reduced, and equality
/// on unreduced values is wrong.
inline Rational ratio(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

inline double to_double(const Rational& value) { return value.get_d(); }

}  // namespace mventropy
