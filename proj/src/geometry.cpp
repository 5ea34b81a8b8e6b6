#include "qhs/geometry.hpp"

#include <cmath>
#include <utility>

#include "qhs/numeric.hpp"

namespace qhs {

namespace {

double ipow(double x, long n) {
  double acc = 1;
  for (long i = 0; i < n; ++i) acc *= x;
  return acc;
}

SingularKind kind_from(int sigma, int nu, long multiplicity) {
  if (multiplicity % 2 == 0) return SingularKind::SADDLE_NODE;
  if (sigma * nu < 0) return SingularKind::SADDLE;
  return sigma < 0 ? SingularKind::STABLE_NODE : SingularKind::UNSTABLE_NODE;
}

// Sign of the first non-vanishing derivative of the chart's angular
// polynomial at a root of multiplicity mu (the derivative order equals mu).
int tangential_sign(const IsolatedRoot& root, UnivarPoly angular, long mu) {
  for (long i = 0; i < mu; ++i) angular = angular.derivative();
  return refine_until_sign(root, angular);
}

// Order of vanishing at 0 of a nonzero univariate polynomial.
long vanishing_order(const UnivarPoly& f) {
  long i = 0;
  while (f.coeff(i) == 0) ++i;
  return i;
}

InfinitySingularity vertical_point(const QHField& X, const EtaData& eta,
                                   bool upper) {
  // Y_POS chart: v' = -eta(v, 1), radial sign -Q(0,1);
  // Y_NEG chart: v' = +eta(v, -1), radial sign +Q(0,-1).
  const Axis axis = upper ? Axis::Y_POS : Axis::Y_NEG;
  const Rational chart_sign(upper ? -1 : 1);
  UnivarPoly angular = chart_sign * restrict_axis(eta.eta, axis);
  const long mu = vanishing_order(angular);
  const int sigma = sign_of(angular.coeff(mu));
  const int nu = sign_of(chart_sign * X.Q.eval(0, Rational(upper ? 1 : -1)));
  InfinitySingularity out;
  out.chart = axis;
  out.kind = kind_from(sigma, nu, mu);
  out.sigma_sign = sigma;
  out.nu_sign = nu;
  return out;
}

}  // namespace

const char* singular_kind_name(SingularKind k) {
  switch (k) {
    case SingularKind::SADDLE: return "SADDLE";
    case SingularKind::STABLE_NODE: return "STABLE_NODE";
    case SingularKind::UNSTABLE_NODE: return "UNSTABLE_NODE";
    case SingularKind::SADDLE_NODE: return "SADDLE_NODE";
  }
  return "?";
}

const char* sector_type_name(SectorType t) {
  switch (t) {
    case SectorType::HYPERBOLIC: return "HYPERBOLIC";
    case SectorType::ELLIPTIC: return "ELLIPTIC";
    case SectorType::PARABOLIC: return "PARABOLIC";
  }
  return "?";
}

double pq_trig_period(const WeightSignature& w) {
  const double p = static_cast<double>(w.p);
  const double q = static_cast<double>(w.q);
  const double a = 1.0 / (2.0 * p);
  const double b = 1.0 / (2.0 * q);
  return 2.0 * std::pow(p, -b) * std::pow(q, -a) * std::tgamma(a) *
         std::tgamma(b) / std::tgamma(a + b);
}

TrigState pq_trig(const WeightSignature& w, double phi) {
  const long p = w.p, q = w.q;
  TrigState out;
  out.phi = phi;
  out.period = pq_trig_period(w);
  std::vector<double> y0 = {std::pow(static_cast<double>(p), -1.0 / (2 * q)),
                            0.0};
  auto rhs = [p, q](double, const std::vector<double>& y,
                    std::vector<double>& dy) {
    dy[0] = -ipow(y[1], 2 * p - 1);
    dy[1] = ipow(y[0], 2 * q - 1);
  };
  std::vector<double> y = phi == 0 ? y0 : ode_advance(rhs, y0, 0.0, phi);
  out.z = y[0];
  out.omega = y[1];
  return out;
}

ReturnIntegral circle_integral(const QHField& X, double tol) {
  if (!(tol > 0)) fail(Err::HypothesisViolated, "tolerance must be positive");
  EtaData eta = compute_eta(X);
  if (eta.identically_zero || !eta.pos_roots.empty() || eta.eta_0_pos == 0)
    fail(Err::HypothesisViolated,
         "circle integral needs a rootless characteristic polynomial with "
         "eta(0,1) != 0");
  const long p = X.w.p, q = X.w.q;
  // Orient by the flow's winding direction so that a positive value always
  // means outward spiralling; see the matching convention in return_integral.
  const double orient = sign_of(eta.eta_0_pos);
  auto rhs = [&](double, const std::vector<double>& y,
                 std::vector<double>& dy) {
    const double z = y[0], om = y[1];
    dy[0] = -ipow(om, 2 * p - 1);
    dy[1] = ipow(z, 2 * q - 1);
    const double xi = ipow(z, 2 * q - 1) * X.P.eval_double(z, om) +
                      ipow(om, 2 * p - 1) * X.Q.eval_double(z, om);
    dy[2] = orient * xi / eta.eta.eval_double(z, om);
  };
  // Integrate over the z > 0 half of the carrier oval and double the result.
  // When q is even the whole family is reversible under (z, w) -> (-z, w), so
  // the two half-arcs of the full loop cancel exactly and the closed-loop
  // tangential integral is identically zero; the doubled right arc is what
  // carries the chart-integral's sign in every parity, and it coincides with
  // the full loop whenever q is odd. The oval's antipodal symmetry puts the
  // z = 0 crossings exactly a half-period apart, so the arc is the span
  // [-T/4, T/4] and starts from the lowest point of the oval.
  const double period = pq_trig_period(X.w);
  const double omega_top = std::pow(static_cast<double>(q), -1.0 / (2 * p));
  std::vector<double> y0 = {0.0, -omega_top, 0.0};
  OdeOptions tight;
  std::vector<double> yt = ode_advance(rhs, y0, 0.0, period / 2, tight);
  OdeOptions loose;
  loose.atol = 1e-9;
  loose.rtol = 1e-7;
  std::vector<double> yl = ode_advance(rhs, y0, 0.0, period / 2, loose);

  ReturnIntegral out;
  out.value = 2.0 * yt[2];
  // Tolerance-pair difference plus the endpoint defect of the carrier: the
  // arc must land on the oval's highest point (0, omega_top).
  out.error_bound = 2.0 * std::abs(yt[2] - yl[2]) + std::abs(yt[0]) +
                    std::abs(yt[1] - omega_top) + 1e-13;
  out.ambiguous = std::abs(out.value) <= tol;
  out.sign = out.ambiguous ? 0 : (out.value > 0 ? 1 : -1);
  return out;
}

std::vector<InfinitySingularity> infinite_singularities(const QHField& X,
                                                        const EtaData& eta) {
  if (eta.identically_zero)
    fail(Err::HypothesisViolated,
         "every direction is characteristic for a radial multiple");
  std::vector<InfinitySingularity> out;

  // x > 0 chart: u' = eta(1,u), radial sign -P(1,u).
  UnivarPoly angular_pos = restrict_axis(eta.eta, Axis::X_POS);
  UnivarPoly radial_pos = restrict_axis(X.P, Axis::X_POS);
  for (const IsolatedRoot& root : eta.pos_roots) {
    InfinitySingularity pt;
    pt.chart = Axis::X_POS;
    pt.lambda = root;
    pt.sigma_sign = tangential_sign(root, angular_pos, root.multiplicity);
    pt.nu_sign = -refine_until_sign(root, radial_pos);
    pt.kind = kind_from(pt.sigma_sign, pt.nu_sign, root.multiplicity);
    out.push_back(std::move(pt));
  }

  const bool vertical = eta.eta_0_pos == 0;
  if (vertical) out.push_back(vertical_point(X, eta, true));

  // x < 0 chart: u' = -eta(-1,u), radial sign +P(-1,u); roots descending.
  UnivarPoly angular_neg = Rational(-1) * restrict_axis(eta.eta, Axis::X_NEG);
  UnivarPoly radial_neg = restrict_axis(X.P, Axis::X_NEG);
  for (const IsolatedRoot& root : eta.neg_roots) {
    InfinitySingularity pt;
    pt.chart = Axis::X_NEG;
    pt.lambda = root;
    pt.sigma_sign = tangential_sign(root, angular_neg, root.multiplicity);
    pt.nu_sign = refine_until_sign(root, radial_neg);
    pt.kind = kind_from(pt.sigma_sign, pt.nu_sign, root.multiplicity);
    out.push_back(std::move(pt));
  }

  if (vertical) out.push_back(vertical_point(X, eta, false));
  return out;
}

std::vector<InvariantCurve> invariant_curves(const QHField& X,
                                             const EtaData& eta) {
  (void)X;
  std::vector<InvariantCurve> out;
  for (const IsolatedRoot& root : eta.pos_roots) {
    InvariantCurve c;
    c.kind = CurveKind::CURVE;
    c.lambda = root;
    out.push_back(std::move(c));
  }
  if (eta.identically_zero || eta.eta_0_pos == 0) {
    InvariantCurve axis;
    axis.kind = CurveKind::AXIS_X0;
    out.push_back(std::move(axis));
  }
  return out;
}

SectorDecomposition origin_sectors(
    const std::vector<InfinitySingularity>& points) {
  SectorDecomposition out;
  out.separatrix_count = static_cast<long>(points.size());
  // Face a point shows toward an adjacent gap: parabolic for nodes,
  // hyperbolic for saddles.
  auto parabolic_face = [](const InfinitySingularity& pt) {
    switch (pt.kind) {
      case SingularKind::STABLE_NODE:
      case SingularKind::UNSTABLE_NODE: return true;
      case SingularKind::SADDLE: return false;
      case SingularKind::SADDLE_NODE:
      default:
        fail(Err::InvalidKind,
             "sector composition is undefined at a saddle-node direction");
    }
  };
  const std::size_t n = points.size();
  for (std::size_t i = 0; i < n; ++i) {
    const bool left = parabolic_face(points[i]);
    const bool right = parabolic_face(points[(i + 1) % n]);
    if (left && right)
      out.sectors.push_back(SectorType::HYPERBOLIC);
    else if (!left && !right)
      out.sectors.push_back(SectorType::ELLIPTIC);
    else
      out.sectors.push_back(SectorType::PARABOLIC);
  }
  return out;
}

}  // namespace qhs
