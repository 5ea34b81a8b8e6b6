#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qhs/field.hpp"

namespace qhs {

// Membership in the four exceptional weight families, each defined by one
// linear equation in a non-negative integer r. When several hold, the r
// values coincide.
struct ThetaMembership {
  std::array<bool, 4> in_theta{};
  std::optional<long> r;
};

ThetaMembership theta_membership(const WeightSignature& w);

enum class NormalFormCase { A, B, C, D };

// Which of the four normal-form shapes the field's eta realizes, with the
// integer r of the matching weight equation.
struct NormalForm {
  NormalFormCase form_case = NormalFormCase::A;
  long r = 0;
  // (eta(0,1) != 0, eta(1,0) != 0).
  std::pair<bool, bool> boundary;
};

NormalForm normal_form(const QHField& X, const EtaData& eta);

// The absolutely convergent return-map integral deciding focus stability.
struct ReturnIntegral {
  double value = 0.0;
  int sign = 0;
  double error_bound = 0.0;
  bool ambiguous = false;
};

ReturnIntegral return_integral(const QHField& X, const EtaData& eta,
                               double tol);

enum class Verdict { STABLE, UNSTABLE_IN_FAMILY, DEGENERATE_RADIAL };
enum class Portrait {
  GLOBAL_CENTER,
  GLOBAL_STABLE_FOCUS,
  GLOBAL_UNSTABLE_FOCUS,
  SECTORED,
};

const char* verdict_name(Verdict v);
const char* portrait_name(Portrait p);

struct StabilityVerdict {
  Verdict verdict = Verdict::STABLE;
  Portrait portrait = Portrait::SECTORED;
  std::optional<ReturnIntegral> integral;
  std::vector<std::string> reasons;
};

// Full structural-stability decision for a validated field. Degenerate
// situations produce verdicts rather than exceptions.
StabilityVerdict classify(const QHField& X, double tol = 1e-9);

// True when the return-map integrand is exactly odd under u -> -u, which
// certifies a vanishing integral (a global center) symbolically.
bool integrand_exactly_odd(const QHField& X, const EtaData& eta);

}  // namespace qhs
