#include "qhs/numeric.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace qhs {

namespace {

// 15-point Kronrod extension of 7-point Gauss, positive abscissae.
constexpr double kKronrodNodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
};

constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};

constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct PanelResult {
  double kronrod;
  double error;
};

PanelResult gauss_kronrod(const std::function<double(double)>& f, double a,
                          double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double k15 = kKronrodWeights[7] * f(center);
  double g7 = kGaussWeights[3] * f(center);
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kKronrodNodes[i];
    const double fsum = f(center - dx) + f(center + dx);
    k15 += kKronrodWeights[i] * fsum;
    if (i % 2 == 1) g7 += kGaussWeights[i / 2] * fsum;
  }
  k15 *= half;
  g7 *= half;
  return {k15, std::abs(k15 - g7)};
}

}  // namespace

Quadrature integrate_adaptive(const std::function<double(double)>& f, double a,
                              double b, double abs_tol) {
  struct Panel {
    double a, b, tol;
    int depth;
  };
  Quadrature total;
  std::vector<Panel> work{{a, b, abs_tol, 0}};
  while (!work.empty()) {
    Panel p = work.back();
    work.pop_back();
    PanelResult r = gauss_kronrod(f, p.a, p.b);
    if (r.error <= p.tol || p.depth >= 48) {
      total.value += r.kronrod;
      total.error += r.error;
      if (p.depth >= 48 && r.error > p.tol) total.converged = false;
      continue;
    }
    double mid = 0.5 * (p.a + p.b);
    work.push_back({p.a, mid, 0.5 * p.tol, p.depth + 1});
    work.push_back({mid, p.b, 0.5 * p.tol, p.depth + 1});
  }
  return total;
}

RationalFunc::RationalFunc(UnivarPoly num, UnivarPoly den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) fail(Err::ZeroPolynomial, "rational function denominator");
  long dn = num_.is_zero() ? 0 : num_.degree();
  long dd = den_.degree();
  gap_ = dd - dn - 2;
  if (!num_.is_zero() && gap_ < 0)
    fail(Err::HypothesisViolated,
         "denominator degree must exceed numerator degree by at least 2");
  auto reversed = [](const UnivarPoly& poly, long upto) {
    std::vector<Rational> c(upto + 1, Rational(0));
    for (long i = 0; i <= poly.degree(); ++i) c[upto - i] = poly.coeff(i);
    return UnivarPoly(std::move(c));
  };
  if (!num_.is_zero()) num_rev_ = reversed(num_, dn);
  den_rev_ = reversed(den_, dd);
}

double RationalFunc::eval(double u) const {
  if (num_.is_zero()) return 0.0;
  return num_.eval_double(u) / den_.eval_double(u);
}

double RationalFunc::eval_tan(double t) const {
  if (num_.is_zero()) return 0.0;
  const double s = std::sin(t);
  const double c = std::cos(t);
  if (std::abs(s) <= std::abs(c)) {
    const double u = s / c;  // |u| <= 1
    return num_.eval_double(u) / den_.eval_double(u) * (1.0 + u * u);
  }
  // u = tan t with |u| > 1: switch to w = 1/u = cot t, |w| < 1. With the
  // reversed coefficients, num(u)/den(u) * (1 + u^2) equals
  // w^{gap} (1 + w^2) num_rev(w)/den_rev(w).
  const double w = c / s;
  double scale = 1.0;
  for (long i = 0; i < gap_; ++i) scale *= w;
  return scale * (1.0 + w * w) * num_rev_.eval_double(w) /
         den_rev_.eval_double(w);
}

std::vector<double> ode_advance(const OdeRhs& rhs, std::vector<double> y0,
                                double t0, double t1,
                                const OdeOptions& options,
                                const OdeObserver& observer) {
  // Dormand-Prince 5(4) tableau.
  static const double A[7][6] = {
      {},
      {1.0 / 5},
      {3.0 / 40, 9.0 / 40},
      {44.0 / 45, -56.0 / 15, 32.0 / 9},
      {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
      {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
      {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
  };
  static const double C[7] = {0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
  static const double B5[7] = {35.0 / 384,      0.0,         500.0 / 1113,
                               125.0 / 192,     -2187.0 / 6784, 11.0 / 84, 0.0};
  static const double B4[7] = {5179.0 / 57600,  0.0,           7571.0 / 16695,
                               393.0 / 640,     -92097.0 / 339200,
                               187.0 / 2100,    1.0 / 40};

  const std::size_t n = y0.size();
  const double direction = (t1 >= t0) ? 1.0 : -1.0;
  double t = t0;
  std::vector<double> y = std::move(y0);
  if (t0 == t1) {
    if (observer) observer(t, y);
    return y;
  }
  double span = std::abs(t1 - t0);
  double h = direction * std::min(span / 100.0, 1e-2);
  if (options.max_step > 0) h = direction * std::min(std::abs(h), options.max_step);

  std::vector<std::vector<double>> k(7, std::vector<double>(n));
  std::vector<double> stage(n), y5(n), y4(n);
  rhs(t, y, k[0]);
  long steps = 0;
  while (direction * (t1 - t) > 0) {
    if (++steps > options.max_steps)
      fail(Err::HypothesisViolated, "ODE step limit exceeded");
    if (direction * (t + h - t1) > 0) h = t1 - t;
    for (int s = 1; s < 7; ++s) {
      for (std::size_t i = 0; i < n; ++i) {
        double acc = 0;
        for (int j = 0; j < s; ++j) acc += A[s][j] * k[j][i];
        stage[i] = y[i] + h * acc;
      }
      rhs(t + C[s] * h, stage, k[s]);
    }
    double err = 0;
    for (std::size_t i = 0; i < n; ++i) {
      double acc5 = 0, acc4 = 0;
      for (int s = 0; s < 7; ++s) {
        acc5 += B5[s] * k[s][i];
        acc4 += B4[s] * k[s][i];
      }
      y5[i] = y[i] + h * acc5;
      y4[i] = y[i] + h * acc4;
      double scale = options.atol +
                     options.rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
      double d = (y5[i] - y4[i]) / scale;
      err += d * d;
    }
    err = std::sqrt(err / static_cast<double>(n));
    if (err <= 1.0) {
      t += h;
      y = y5;
      // k7 of the accepted step is the derivative at the new point (FSAL).
      k[0] = k[6];
      if (observer) observer(t, y);
    } else {
      rhs(t, y, k[0]);
    }
    double factor = (err > 0) ? 0.9 * std::pow(err, -0.2) : 5.0;
    factor = std::clamp(factor, 0.2, 5.0);
    h *= factor;
    if (options.max_step > 0 && std::abs(h) > options.max_step)
      h = direction * options.max_step;
    if (std::abs(h) < 1e-14 * std::max(1.0, std::abs(t)))
      fail(Err::HypothesisViolated, "ODE step size underflow");
  }
  return y;
}

}  // namespace qhs
