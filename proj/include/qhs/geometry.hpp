#pragma once

#include <optional>
#include <vector>

#include "qhs/field.hpp"
#include "qhs/roots.hpp"
#include "qhs/stability.hpp"

namespace qhs {

// A sample of the generalized trigonometric pair (Cs, Sn) attached to the
// weights: the solution of z' = -omega^{2p-1}, omega' = z^{2q-1} from
// z(0) = p^{-1/(2q)}, omega(0) = 0. `period` is the full revolution time.
struct TrigState {
  double z = 0;
  double omega = 0;
  double phi = 0;
  double period = 0;
};

// Period of the generalized trigonometric functions, via the Gamma function.
double pq_trig_period(const WeightSignature& w);

// (Cs phi, Sn phi) by adaptive integration of the defining system.
TrigState pq_trig(const WeightSignature& w, double phi);

// Log-radius growth over one full revolution, computed by augmenting the
// trigonometric system with A' = xi/eta and integrating over one period.
// Same sign semantics as return_integral (positive means unstable focus);
// the value is twice the half-turn integral.
ReturnIntegral circle_integral(const QHField& X, double tol);

enum class SingularKind { SADDLE, STABLE_NODE, UNSTABLE_NODE, SADDLE_NODE };
const char* singular_kind_name(SingularKind k);

// A singular point on the equator of the compactified disk, located by its
// blow-up chart and the chart coordinate of the direction. An empty lambda
// marks the vertical direction handled by the Y charts.
struct InfinitySingularity {
  Axis chart = Axis::X_POS;
  std::optional<IsolatedRoot> lambda;
  SingularKind kind = SingularKind::SADDLE;
  int sigma_sign = 0;  // tangential (along-equator) eigenvalue sign
  int nu_sign = 0;     // radial eigenvalue sign
};

// All singular points at infinity, ordered counterclockwise around the
// equator: X_POS chart roots ascending, the upper vertical direction if
// present, X_NEG chart roots descending, then the lower vertical direction.
// Even-multiplicity directions are classified SADDLE_NODE (they only occur
// for fields that are not structurally stable).
std::vector<InfinitySingularity> infinite_singularities(const QHField& X,
                                                        const EtaData& eta);

enum class CurveKind { CURVE, AXIS_X0 };

// An invariant curve through the origin: either y^p = lambda^p x^q for a
// characteristic root lambda, or the vertical axis x = 0.
struct InvariantCurve {
  CurveKind kind = CurveKind::CURVE;
  std::optional<IsolatedRoot> lambda;
};

std::vector<InvariantCurve> invariant_curves(const QHField& X,
                                             const EtaData& eta);

enum class SectorType { HYPERBOLIC, ELLIPTIC, PARABOLIC };
const char* sector_type_name(SectorType t);

// The local sector structure at the origin, one sector per gap between
// consecutive characteristic directions (cyclically).
struct SectorDecomposition {
  std::vector<SectorType> sectors;
  long separatrix_count = 0;
};

// Derives the origin sectors from the equator ring: each singular point at
// infinity faces its two neighbouring gaps with a parabolic face (nodes) or
// a hyperbolic face (saddles); two parabolic faces enclose a hyperbolic
// sector, two hyperbolic faces an elliptic one, mixed faces a parabolic one.
SectorDecomposition origin_sectors(const std::vector<InfinitySingularity>& points);

}  // namespace qhs
