#pragma once

#include <string>

#include "qhs/field.hpp"

namespace qhs {

struct PlotOptions {
  int size = 600;         // output width and height in pixels
  int trajectories = 24;  // seed count; 0 draws only the skeleton
};

// Renders the compactified phase portrait of a validated stable field on
// the disk: the equator circle, the invariant curves through the origin,
// the singular points at infinity (filled = stable node, hollow = unstable
// node, cross = saddle), and numerically integrated trajectories. The
// radial compactification is rho = R / (1 + R) in the weighted radius R.
// Output is deterministic for fixed options.
std::string render_plot(const QHField& X, const PlotOptions& opts = {});

}  // namespace qhs
