#pragma once

#include <functional>
#include <vector>

#include "qhs/poly.hpp"

namespace qhs {

struct Quadrature {
  double value = 0.0;
  double error = 0.0;
  bool converged = true;
};

// Adaptive Gauss-Kronrod 7/15 over [a, b] targeting an absolute tolerance.
Quadrature integrate_adaptive(const std::function<double(double)>& f, double a,
                              double b, double abs_tol);

// Rational function num/den evaluated without overflow for any argument,
// including the tangent substitution used for integrals over the whole line.
// Requires deg(den) >= deg(num) + 2 so that the substituted integrand stays
// bounded; the denominator must have no real roots where it is evaluated.
class RationalFunc {
public:
  RationalFunc(UnivarPoly num, UnivarPoly den);

  // num(u)/den(u); intended for |u| <= 1 (no overflow protection).
  double eval(double u) const;

  // num(tan t)/den(tan t) * sec^2 t, the change of variables u = tan t.
  // Large |tan t| is handled through the reversed coefficient sequences.
  double eval_tan(double t) const;

  long degree_gap() const { return gap_; }

private:
  UnivarPoly num_;
  UnivarPoly den_;
  UnivarPoly num_rev_;
  UnivarPoly den_rev_;
  long gap_;  // deg(den) - deg(num) - 2 >= 0
};

struct OdeOptions {
  double atol = 1e-12;
  double rtol = 1e-10;
  double max_step = 0.0;  // 0 = unlimited
  long max_steps = 2000000;
};

using OdeRhs =
    std::function<void(double, const std::vector<double>&, std::vector<double>&)>;
using OdeObserver = std::function<void(double, const std::vector<double>&)>;

// Dormand-Prince 5(4) adaptive integration of y' = rhs(t, y) from t0 to t1
// (either direction). The observer, when given, sees every accepted step
// including the clamped arrival at t1. Returns y(t1).
std::vector<double> ode_advance(const OdeRhs& rhs, std::vector<double> y0,
                                double t0, double t1,
                                const OdeOptions& options = {},
                                const OdeObserver& observer = nullptr);

}  // namespace qhs
