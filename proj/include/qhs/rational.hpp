#pragma once

#include <gmpxx.h>

#include <string>

#include "qhs/error.hpp"

namespace qhs {

// Exact rational numbers. mpq_class keeps values canonical (lowest terms,
// positive denominator), which is exactly the invariant we need.
using Rational = mpq_class;

inline int sign_of(const Rational& r) { return sgn(r); }

inline double to_double(const Rational& r) { return r.get_d(); }

// Canonical text form: "n" for integers, "n/d" otherwise.
inline std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

// Accepts optional sign, integer, optional "/" positive-integer.
// Whitespace is not tolerated; callers trim first.
Rational parse_rational(const std::string& text);

}  // namespace qhs
