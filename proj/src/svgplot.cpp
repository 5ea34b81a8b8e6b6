#include "qhs/svgplot.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <vector>

#include "qhs/error.hpp"
#include "qhs/geometry.hpp"
#include "qhs/numeric.hpp"

namespace qhs {

namespace {

// Fixed four-decimal formatting keeps the output byte-stable.
std::string fmt(double v) {
  if (!std::isfinite(v)) v = 0.0;
  if (std::abs(v) < 5e-5) v = 0.0;  // avoid "-0.0000"
  char buf[32];
  const auto res =
      std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 4);
  return std::string(buf, res.ptr);
}

struct Pt {
  double x = 0;
  double y = 0;
};

// The weighted radius R(x, y) = (x^{2q} + y^{2p})^{1/(2pq)} and the disk
// model: a point maps to the Euclidean direction of its weighted-sphere
// projection at distance rho = R / (1 + R). SVG's y axis points down, so
// the vertical coordinate is negated here once and for all.
struct DiskMap {
  long p = 1;
  long q = 1;

  double radius(double x, double y) const {
    const double s = std::pow(x * x, static_cast<double>(q)) +
                     std::pow(y * y, static_cast<double>(p));
    if (!(s > 0)) return 0.0;
    return std::pow(s, 1.0 / (2.0 * static_cast<double>(p) *
                              static_cast<double>(q)));
  }

  Pt screen(double x, double y) const {
    const double R = radius(x, y);
    if (R < 1e-12) return {0.0, 0.0};
    const double u = x / std::pow(R, static_cast<double>(p));
    const double v = y / std::pow(R, static_cast<double>(q));
    const double n = std::hypot(u, v);
    if (!(n > 0)) return {0.0, 0.0};
    const double rho = R / (1.0 + R);
    return {rho * u / n, -rho * v / n};
  }
};

double signed_pow(double t, long e) {
  const double mag = std::pow(std::abs(t), static_cast<double>(e));
  return t < 0 && e % 2 != 0 ? -mag : mag;
}

Pt equator_point(long p, long q, const InfinitySingularity& s) {
  switch (s.chart) {
    case Axis::Y_POS: return {0.0, -1.0};
    case Axis::Y_NEG: return {0.0, 1.0};
    case Axis::X_POS:
    case Axis::X_NEG: {
      const double lam = s.lambda ? s.lambda->approx() : 0.0;
      const double w = std::pow(lam * lam, static_cast<double>(p));
      double u = std::pow(1.0 + w, -1.0 / (2.0 * static_cast<double>(q)));
      const double v = lam * std::pow(1.0 + w, -1.0 / (2.0 * static_cast<double>(p)));
      if (s.chart == Axis::X_NEG) u = -u;
      const double n = std::hypot(u, v);
      return {u / n, -v / n};
    }
  }
  return {0.0, 0.0};
}

void append_polyline(std::ostringstream& svg, const std::vector<Pt>& pts) {
  if (pts.size() < 2) return;
  svg << "<polyline points=\"";
  for (size_t i = 0; i < pts.size(); ++i) {
    if (i) svg << ' ';
    svg << fmt(pts[i].x) << ',' << fmt(pts[i].y);
  }
  svg << "\"/>\n";
}

std::vector<Pt> curve_points(const DiskMap& map, const InvariantCurve& curve) {
  const int steps = 140;
  const double rho_max = 0.995;
  std::vector<Pt> pts;
  pts.reserve(2 * steps + 1);
  if (curve.kind == CurveKind::AXIS_X0) {
    for (int i = -steps; i <= steps; ++i)
      pts.push_back({0.0, -rho_max * i / steps});
    return pts;
  }
  const double lam = curve.lambda ? curve.lambda->approx() : 0.0;
  const double scale =
      std::pow(1.0 + std::pow(lam * lam, static_cast<double>(map.p)),
               1.0 / (2.0 * static_cast<double>(map.p) *
                      static_cast<double>(map.q)));
  for (int i = -steps; i <= steps; ++i) {
    const double rho = rho_max * std::abs(i) / steps;
    const double radial = rho / (1.0 - rho);
    const double t = (i < 0 ? -1.0 : 1.0) * radial / scale;
    pts.push_back(
        map.screen(signed_pow(t, map.p), lam * signed_pow(t, map.q)));
  }
  return pts;
}

struct StopIntegration {};

std::vector<Pt> trajectory(const QHField& X, const DiskMap& map, double x0,
                           double y0, bool forward) {
  // Dividing the field by R^{m-1} rescales time so that progress across the
  // disk is roughly uniform; the orbits are unchanged.
  const long m = X.w.m;
  const OdeRhs rhs = [&](double, const std::vector<double>& y,
                         std::vector<double>& dy) {
    const double R = std::max(map.radius(y[0], y[1]), 1e-9);
    const double scale = std::pow(R, static_cast<double>(m - 1));
    dy[0] = X.P.eval_double(y[0], y[1]) / scale;
    dy[1] = X.Q.eval_double(y[0], y[1]) / scale;
  };
  std::vector<Pt> pts;
  Pt last{1e9, 1e9};
  const OdeObserver observer = [&](double, const std::vector<double>& y) {
    const double R = map.radius(y[0], y[1]);
    const Pt s = map.screen(y[0], y[1]);
    if (pts.empty() || std::hypot(s.x - last.x, s.y - last.y) >= 0.0025) {
      pts.push_back(s);
      last = s;
    }
    if (R > 199.0 || R < 2e-3 || pts.size() >= 1500) throw StopIntegration{};
  };
  OdeOptions options;
  options.atol = 1e-9;
  options.rtol = 1e-7;
  options.max_step = 0.05;
  options.max_steps = 1000000;
  try {
    ode_advance(rhs, {x0, y0}, 0.0, forward ? 160.0 : -160.0, options,
                observer);
  } catch (const StopIntegration&) {
  } catch (const Error&) {
    // step limit or underflow: keep whatever arc was collected
  }
  return pts;
}

Pt seed_state(long p, long q, double theta, double rho0) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  // Scale the direction onto the weighted unit sphere u^{2q} + v^{2p} = 1.
  double lo = 0.0, hi = 3.0;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double val = std::pow(mid * mid * c * c, static_cast<double>(q)) +
                       std::pow(mid * mid * s * s, static_cast<double>(p));
    (val < 1.0 ? lo : hi) = mid;
  }
  const double t = 0.5 * (lo + hi);
  const double R = rho0 / (1.0 - rho0);
  return {std::pow(R, static_cast<double>(p)) * t * c,
          std::pow(R, static_cast<double>(q)) * t * s};
}

void append_marker(std::ostringstream& svg, const Pt& c, SingularKind kind) {
  const double r = 0.028;
  switch (kind) {
    case SingularKind::STABLE_NODE:
      svg << "<circle cx=\"" << fmt(c.x) << "\" cy=\"" << fmt(c.y) << "\" r=\""
          << fmt(r) << "\" fill=\"#151515\"/>\n";
      break;
    case SingularKind::UNSTABLE_NODE:
      svg << "<circle cx=\"" << fmt(c.x) << "\" cy=\"" << fmt(c.y) << "\" r=\""
          << fmt(r)
          << "\" fill=\"#ffffff\" stroke=\"#151515\" stroke-width=\"0.01\"/>\n";
      break;
    case SingularKind::SADDLE: {
      const double d = r * 0.85;
      svg << "<g stroke=\"#a03434\" stroke-width=\"0.012\">"
          << "<line x1=\"" << fmt(c.x - d) << "\" y1=\"" << fmt(c.y - d)
          << "\" x2=\"" << fmt(c.x + d) << "\" y2=\"" << fmt(c.y + d)
          << "\"/>"
          << "<line x1=\"" << fmt(c.x - d) << "\" y1=\"" << fmt(c.y + d)
          << "\" x2=\"" << fmt(c.x + d) << "\" y2=\"" << fmt(c.y - d)
          << "\"/></g>\n";
      break;
    }
    case SingularKind::SADDLE_NODE:
      svg << "<circle cx=\"" << fmt(c.x) << "\" cy=\"" << fmt(c.y) << "\" r=\""
          << fmt(r)
          << "\" fill=\"#9a9a9a\" stroke=\"#151515\" stroke-width=\"0.01\"/>\n";
      break;
  }
}

}  // namespace

std::string render_plot(const QHField& field, const PlotOptions& opts) {
  const QHField X = normalize_weights(field);
  const EtaData eta = compute_eta(X);
  const std::vector<InfinitySingularity> points =
      infinite_singularities(X, eta);
  const std::vector<InvariantCurve> curves = invariant_curves(X, eta);
  const DiskMap map{X.w.p, X.w.q};

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opts.size
      << "\" height=\"" << opts.size
      << "\" viewBox=\"-1.05 -1.05 2.1 2.1\">\n";
  svg << "<rect x=\"-1.05\" y=\"-1.05\" width=\"2.1\" height=\"2.1\" "
         "fill=\"#ffffff\"/>\n";
  svg << "<circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"#202020\" "
         "stroke-width=\"0.01\"/>\n";

  svg << "<g fill=\"none\" stroke=\"#9a9a9a\" stroke-width=\"0.006\">\n";
  for (const InvariantCurve& curve : curves)
    append_polyline(svg, curve_points(map, curve));
  svg << "</g>\n";

  if (opts.trajectories > 0) {
    svg << "<g fill=\"none\" stroke=\"#2a6fb0\" stroke-width=\"0.005\">\n";
    for (int i = 0; i < opts.trajectories; ++i) {
      const double theta =
          2.0 * M_PI * (i + 0.5) / static_cast<double>(opts.trajectories);
      const Pt s = seed_state(X.w.p, X.w.q, theta, 0.3);
      append_polyline(svg, trajectory(X, map, s.x, s.y, true));
      append_polyline(svg, trajectory(X, map, s.x, s.y, false));
    }
    svg << "</g>\n";
  }

  for (const InfinitySingularity& s : points)
    append_marker(svg, equator_point(X.w.p, X.w.q, s), s.kind);

  svg << "</svg>\n";
  return svg.str();
}

}  // namespace qhs
