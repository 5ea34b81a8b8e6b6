#include "qhs/stability.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "qhs/numeric.hpp"

namespace qhs {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::optional<long> solve_linear(long lhs, long factor) {
  // lhs = r * factor with r a non-negative integer.
  if (lhs < 0 || lhs % factor != 0) return std::nullopt;
  return lhs / factor;
}

// Restriction of the integrand data to the x = 1 slice:
// numerator p*xi(1,u), denominator (p + q u^{2p}) * |eta(1,u)|.
// The denominator takes eta with the flow's winding sign folded in, so the
// integral measures log-radius growth per revolution *along the flow*: a
// rootless eta(1,u) keeps the constant sign of its leading coefficient
// eta(0,1), and dividing by that signed eta would make the value blind to
// time reversal.
std::pair<UnivarPoly, UnivarPoly> integrand_fraction(const QHField& X,
                                                     const EtaData& eta) {
  const long p = X.w.p, q = X.w.q;
  UnivarPoly pu = restrict_axis(X.P, Axis::X_POS);
  UnivarPoly qu = restrict_axis(X.Q, Axis::X_POS);
  // xi(1,u) = P(1,u) + u^{2p-1} Q(1,u).
  std::vector<Rational> shift(2 * p, Rational(0));
  shift[2 * p - 1] = 1;
  UnivarPoly xi = pu + UnivarPoly(std::move(shift)) * qu;
  UnivarPoly num = Rational(p) * xi;
  std::vector<Rational> radial(2 * p + 1, Rational(0));
  radial[0] = p;
  radial[2 * p] = q;
  UnivarPoly den = UnivarPoly(std::move(radial)) * restrict_axis(eta.eta, Axis::X_POS);
  if (sign_of(eta.eta_0_pos) < 0) den = Rational(-1) * den;
  return {num, den};
}

}  // namespace

ThetaMembership theta_membership(const WeightSignature& w) {
  if (w.p < 1 || w.q < 1 || w.m < 1 || std::gcd(w.p, w.q) != 1)
    fail(Err::HypothesisViolated, "signature must be positive with coprime p, q");
  const long p = w.p, q = w.q, m = w.m, pq = w.p * w.q;
  ThetaMembership out;
  std::optional<long> r1, r2, r3, r4;
  // p+q+m-1 = (r+1) pq
  if (auto s = solve_linear(p + q + m - 1, pq); s && *s >= 1) r1 = *s - 1;
  // p+m-1 = r pq
  if (auto s = solve_linear(p + m - 1, pq); s && *s >= 1) r2 = *s;
  // q+m-1 = r pq
  if (auto s = solve_linear(q + m - 1, pq); s && *s >= 1) r3 = *s;
  // m-1 = (r-1) pq, r >= 1
  if (auto s = solve_linear(m - 1, pq)) r4 = *s + 1;
  out.in_theta = {r1.has_value(), r2.has_value(), r3.has_value(), r4.has_value()};
  for (const auto& r : {r1, r2, r3, r4}) {
    if (!r) continue;
    if (out.r && *out.r != *r)
      fail(Err::InconsistentR, "membership equations disagree on r");
    out.r = *r;
  }
  return out;
}

NormalForm normal_form(const QHField& X, const EtaData& eta) {
  if (eta.identically_zero)
    fail(Err::HypothesisViolated, "radial field has no normal form");
  const long p = X.w.p, q = X.w.q, m = X.w.m, pq = X.w.p * X.w.q;
  NormalForm out;
  const bool at_y = eta.eta_0_pos != 0;          // eta(0,1) != 0
  const bool at_x = eta.eta.eval(1, 0) != 0;     // eta(1,0) != 0
  out.boundary = {at_y, at_x};

  std::optional<long> r;
  if (at_y && at_x) {
    out.form_case = NormalFormCase::A;
    if (auto s = solve_linear(p + q + m - 1, pq); s && *s >= 1) r = *s - 1;
  } else if (at_y && !at_x) {
    out.form_case = NormalFormCase::B;
    if (auto s = solve_linear(p + m - 1, pq); s && *s >= 1) r = *s;
  } else if (!at_y && at_x) {
    out.form_case = NormalFormCase::C;
    if (auto s = solve_linear(q + m - 1, pq); s && *s >= 1) r = *s;
  } else {
    out.form_case = NormalFormCase::D;
    if (auto s = solve_linear(m - 1, pq)) r = *s + 1;
  }
  if (!r) {
    std::ostringstream msg;
    msg << "no integer r matches the boundary pattern for weights (" << p
        << ", " << q << ", " << m << ")";
    fail(Err::NoIntegerR, msg.str());
  }
  out.r = *r;

  // The four coefficients that must not vanish for the shape to be generic.
  const long rr = *r;
  struct Corner {
    const BivarPoly* poly;
    const char* name;
    long i, j;
  };
  std::vector<Corner> corners;
  switch (out.form_case) {
    case NormalFormCase::A:
      corners = {{&eta.eta, "eta", 0, (rr + 1) * p},
                 {&eta.eta, "eta", (rr + 1) * q, 0},
                 {&X.P, "P", 0, (rr + 1) * p - 1},
                 {&X.Q, "Q", (rr + 1) * q - 1, 0}};
      break;
    case NormalFormCase::B:
      corners = {{&eta.eta, "eta", 0, rr * p + 1},
                 {&eta.eta, "eta", rr * q, 1},
                 {&X.P, "P", 0, rr * p},
                 {&X.P, "P", rr * q, 0}};
      break;
    case NormalFormCase::C:
      corners = {{&eta.eta, "eta", 1, rr * p},
                 {&eta.eta, "eta", rr * q + 1, 0},
                 {&X.Q, "Q", rr * q, 0},
                 {&X.Q, "Q", 0, rr * p}};
      break;
    case NormalFormCase::D:
      corners = {{&eta.eta, "eta", 1, (rr - 1) * p + 1},
                 {&eta.eta, "eta", (rr - 1) * q + 1, 1},
                 {&X.P, "P", (rr - 1) * q + 1, 0},
                 {&X.Q, "Q", 0, (rr - 1) * p + 1}};
      break;
  }
  for (const auto& c : corners) {
    if (c.poly->coeff(c.i, c.j) == 0) {
      std::ostringstream msg;
      msg << "corner coefficient of " << c.name << " at x^" << c.i << " y^"
          << c.j << " vanishes";
      fail(Err::PatternViolation, msg.str());
    }
  }
  return out;
}

ReturnIntegral return_integral(const QHField& X, const EtaData& eta,
                               double tol) {
  if (eta.identically_zero || !eta.pos_roots.empty() || eta.eta_0_pos == 0)
    fail(Err::HypothesisViolated,
         "return integral needs rootless eta(1,u) and eta(0,1) != 0");
  if (tol <= 0) fail(Err::HypothesisViolated, "tolerance must be positive");
  auto [num, den] = integrand_fraction(X, eta);
  ReturnIntegral out;
  if (num.is_zero()) {
    out.ambiguous = true;
    return out;
  }
  RationalFunc f(std::move(num), std::move(den));
  Quadrature q = integrate_adaptive([&](double t) { return f.eval_tan(t); },
                                    -kPi / 2, kPi / 2, tol / 4);
  out.value = q.value;
  out.error_bound = q.error;
  out.ambiguous = std::abs(q.value) <= tol;
  out.sign = out.ambiguous ? 0 : (q.value > 0 ? 1 : -1);
  return out;
}

bool integrand_exactly_odd(const QHField& X, const EtaData& eta) {
  auto [num, den] = integrand_fraction(X, eta);
  if (num.is_zero()) return true;
  auto mirrored = [](const UnivarPoly& poly) {
    std::vector<Rational> c = poly.coeffs();
    for (std::size_t i = 1; i < c.size(); i += 2) c[i] = -c[i];
    return UnivarPoly(std::move(c));
  };
  // Odd integrand: num(-u) den(u) + num(u) den(-u) == 0.
  return (mirrored(num) * den + num * mirrored(den)).is_zero();
}

StabilityVerdict classify(const QHField& X, double tol) {
  StabilityVerdict out;
  EtaData eta = compute_eta(X);
  if (eta.identically_zero) {
    out.verdict = Verdict::DEGENERATE_RADIAL;
    out.portrait = Portrait::SECTORED;
    return out;
  }
  if (eta.pos_roots.empty() && eta.eta_0_pos != 0) {
    // No singular directions: focus or center, decided by the integral.
    ReturnIntegral ri = return_integral(X, eta, tol);
    out.integral = ri;
    if (!ri.ambiguous) {
      out.verdict = Verdict::STABLE;
      out.portrait = ri.sign > 0 ? Portrait::GLOBAL_UNSTABLE_FOCUS
                                 : Portrait::GLOBAL_STABLE_FOCUS;
    } else {
      // Candidate center: never structurally stable, never certified from
      // floating point alone. An exactly odd integrand is a symbolic proof.
      out.verdict = Verdict::UNSTABLE_IN_FAMILY;
      out.portrait = Portrait::GLOBAL_CENTER;
      out.reasons.push_back(integrand_exactly_odd(X, eta)
                                ? "CENTER_INTEGRAL_ZERO"
                                : "CENTER_INTEGRAL_AMBIGUOUS");
    }
    return out;
  }
  out.portrait = Portrait::SECTORED;
  bool stable = true;
  for (const auto& root : eta.pos_roots) {
    if (root.multiplicity > 1) {
      stable = false;
      out.reasons.push_back("MULTIPLE_ROOT");
      break;
    }
  }
  if (eta.eta_0_pos == 0) {
    // x = 0 is invariant; the boundary zero must be simple, i.e. the
    // x-linear coefficient of eta(x, 1) must not vanish.
    UnivarPoly along_y = restrict_axis(eta.eta, Axis::Y_POS);
    if (along_y.coeff(1) == 0) {
      stable = false;
      out.reasons.push_back("BOUNDARY_ROOT_NOT_SIMPLE");
    }
  }
  out.verdict = stable ? Verdict::STABLE : Verdict::UNSTABLE_IN_FAMILY;
  return out;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::STABLE: return "STABLE";
    case Verdict::UNSTABLE_IN_FAMILY: return "UNSTABLE_IN_FAMILY";
    case Verdict::DEGENERATE_RADIAL: return "DEGENERATE_RADIAL";
  }
  return "?";
}

const char* portrait_name(Portrait p) {
  switch (p) {
    case Portrait::GLOBAL_CENTER: return "GLOBAL_CENTER";
    case Portrait::GLOBAL_STABLE_FOCUS: return "GLOBAL_STABLE_FOCUS";
    case Portrait::GLOBAL_UNSTABLE_FOCUS: return "GLOBAL_UNSTABLE_FOCUS";
    case Portrait::SECTORED: return "SECTORED";
  }
  return "?";
}

}  // namespace qhs
