#include "qhs/field.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <utility>

namespace qhs {

namespace {

void check_signature(const WeightSignature& w) {
  if (w.p < 1 || w.q < 1 || w.m < 1) {
    std::ostringstream msg;
    msg << "weights must be positive, got (" << w.p << ", " << w.q << ", "
        << w.m << ")";
    fail(Err::HypothesisViolated, msg.str());
  }
  if (std::gcd(w.p, w.q) != 1)
    fail(Err::HypothesisViolated,
         "weights p, q must be coprime; normalize the signature first");
}

// Number of monomials x^i y^j with p*i + q*j = d, i, j >= 0.
long lattice_count(long p, long q, long d) {
  long count = 0;
  for (long j = 0; q * j <= d; ++j) {
    long rest = d - q * j;
    if (rest % p == 0) ++count;
  }
  return count;
}

void check_component_degree(const BivarPoly& poly, const WeightSignature& w,
                            const char* name, long expected) {
  if (poly.is_zero()) return;
  WeightedDegree d = weighted_degree(poly, w);
  if (!d.degree) {
    std::ostringstream msg;
    msg << name << " is not quasihomogeneous for weights (" << w.p << ", "
        << w.q << "); expected weighted degree " << expected;
    fail(Err::WrongDegree, msg.str());
  }
  if (*d.degree != expected) {
    std::ostringstream msg;
    msg << name << " has weighted degree " << *d.degree << ", expected "
        << expected;
    fail(Err::WrongDegree, msg.str());
  }
}

}  // namespace

MembershipReport check_membership(long p, long q, long m) {
  check_signature(WeightSignature{p, q, m});
  MembershipReport report;
  report.k1 = lattice_count(p, q, p - 1 + m);
  report.k2 = lattice_count(p, q, q - 1 + m);
  report.nonempty = report.k1 >= 1 && report.k2 >= 1;
  report.coefficient_dimension = report.k1 + report.k2;
  return report;
}

QHField normalize_weights(const QHField& field) {
  QHField out = field;
  const long g = std::gcd(out.w.p, out.w.q);
  if (g > 1) {
    if ((out.w.m - 1) % g != 0) {
      std::ostringstream msg;
      msg << "gcd(p, q) = " << g << " does not divide m - 1 = "
          << out.w.m - 1;
      fail(Err::IndivisibleDegree, msg.str());
    }
    out.w.p /= g;
    out.w.q /= g;
    out.w.m = 1 + (out.w.m - 1) / g;
  }
  if (out.w.p % 2 == 0) {
    // Exchange the axes: (x, y) -> (y, x) turns (P, Q) with weights (p, q)
    // into (Q, P) with both arguments swapped and weights (q, p).
    std::swap(out.w.p, out.w.q);
    BivarPoly new_p = out.Q.swap_vars();
    out.Q = out.P.swap_vars();
    out.P = new_p;
  }
  return out;
}

void validate(const QHField& field) {
  check_signature(field.w);
  if (field.P.is_zero() && field.Q.is_zero())
    fail(Err::BothZero, "both components vanish identically");
  check_component_degree(field.P, field.w, "P", field.w.p - 1 + field.w.m);
  check_component_degree(field.Q, field.w, "Q", field.w.q - 1 + field.w.m);
  // Coprimality. A common factor of two quasihomogeneous polynomials is
  // quasihomogeneous itself, hence x, y, or detectable on the x = 1 slice.
  if (field.P.divisible_by_x() && field.Q.divisible_by_x())
    fail(Err::NotCoprime, "x divides both components");
  if (field.P.divisible_by_y() && field.Q.divisible_by_y())
    fail(Err::NotCoprime, "y divides both components");
  if (field.P.is_zero() || field.Q.is_zero())
    fail(Err::NotCoprime, "one component vanishes identically");
  UnivarPoly pu = restrict_axis(field.P, Axis::X_POS);
  UnivarPoly qu = restrict_axis(field.Q, Axis::X_POS);
  if (!pu.is_zero() && !qu.is_zero()) {
    UnivarPoly g = univar_gcd(pu, qu);
    if (g.degree() >= 1)
      fail(Err::NotCoprime,
           "components share the factor with slice gcd " + g.str());
  }
}

EtaData compute_eta(const QHField& field) {
  EtaData data;
  data.eta = Rational(field.w.p) * (BivarPoly::var_x() * field.Q) -
             Rational(field.w.q) * (BivarPoly::var_y() * field.P);
  if (data.eta.is_zero()) {
    data.identically_zero = true;
    data.eta_0_pos = 0;
    data.eta_0_neg = 0;
    return data;
  }
  data.eta_0_pos = data.eta.eval(0, 1);
  data.eta_0_neg = data.eta.eval(0, -1);
  UnivarPoly pos = restrict_axis(data.eta, Axis::X_POS);
  UnivarPoly neg = restrict_axis(data.eta, Axis::X_NEG);
  if (!pos.is_zero() && pos.degree() >= 1)
    data.pos_roots = isolate_real_roots(pos);
  if (!neg.is_zero() && neg.degree() >= 1) {
    data.neg_roots = isolate_real_roots(neg);
    std::reverse(data.neg_roots.begin(), data.neg_roots.end());
  }
  return data;
}

bool is_radial(const QHField& field) {
  return (Rational(field.w.p) * (BivarPoly::var_x() * field.Q) -
          Rational(field.w.q) * (BivarPoly::var_y() * field.P))
      .is_zero();
}

}  // namespace qhs
