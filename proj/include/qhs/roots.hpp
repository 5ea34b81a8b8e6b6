#pragma once

#include <optional>
#include <vector>

#include "qhs/poly.hpp"

namespace qhs {

// One isolated real root of a univariate polynomial.
//
// For irrational roots, `defining` is the square-free factor that vanishes
// exactly once inside (lo, hi) with defining(lo)*defining(hi) < 0; the
// interval can be refined on demand. Rational roots carry exact_value and a
// collapsed interval lo == hi == value.
struct IsolatedRoot {
  Rational lo;
  Rational hi;
  long multiplicity = 1;
  std::optional<Rational> exact_value;
  UnivarPoly defining;

  bool is_exact() const { return exact_value.has_value(); }
  double approx() const;
  // Midpoint of the current interval (the value itself when exact).
  Rational midpoint() const;
};

// Shrink the root's interval until hi - lo <= width (no-op for exact roots).
void refine_interval(IsolatedRoot& root, const Rational& width);

// All distinct real roots, ascending, with multiplicities from square-free
// decomposition. Intervals of distinct roots are pairwise disjoint.
// Throws ZeroPolynomial for the zero polynomial.
std::vector<IsolatedRoot> isolate_real_roots(const UnivarPoly& poly);

// Exact sign of probe at the root. The probe must not vanish there; if the
// gcd of probe and the root's defining polynomial has a root in the isolating
// interval this throws ProbeVanishes.
int refine_until_sign(const IsolatedRoot& root, const UnivarPoly& probe);

// Number of distinct real roots of poly in the half-open interval (a, b],
// by Sturm's theorem. poly must not vanish at a or b... it may vanish at b
// (counted); it must not be the zero polynomial.
long sturm_count(const UnivarPoly& poly, const Rational& a, const Rational& b);

// Square-free part (product of distinct irreducible factors, monic).
UnivarPoly squarefree_part(const UnivarPoly& poly);

// Yun decomposition: list of (factor, multiplicity) with factors square-free,
// pairwise coprime, multiplicities strictly increasing.
std::vector<std::pair<UnivarPoly, long>> squarefree_decomposition(
    const UnivarPoly& poly);

}  // namespace qhs
