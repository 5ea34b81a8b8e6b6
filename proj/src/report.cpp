#include "qhs/report.hpp"

#include <json.hpp>
#include <sstream>

#include "qhs/error.hpp"
#include "qhs/sequences.hpp"

namespace qhs {

namespace {

using nlohmann::json;

const char* axis_name(Axis a) {
  switch (a) {
    case Axis::X_POS: return "X_POS";
    case Axis::X_NEG: return "X_NEG";
    case Axis::Y_POS: return "Y_POS";
    case Axis::Y_NEG: return "Y_NEG";
  }
  return "?";
}

const char* case_letter(NormalFormCase c) {
  switch (c) {
    case NormalFormCase::A: return "A";
    case NormalFormCase::B: return "B";
    case NormalFormCase::C: return "C";
    case NormalFormCase::D: return "D";
  }
  return "?";
}

json root_json(const IsolatedRoot& root) {
  json j;
  j["approx"] = root.approx();
  j["multiplicity"] = root.multiplicity;
  if (root.is_exact())
    j["exact"] = to_string(*root.exact_value);
  else
    j["interval"] = json::array(
        {to_string(root.lo), to_string(root.hi)});
  return j;
}

std::string root_text(const IsolatedRoot& root) {
  if (root.is_exact()) return to_string(*root.exact_value);
  std::ostringstream out;
  out << "~" << root.approx() << " in (" << to_string(root.lo) << ", "
      << to_string(root.hi) << ")";
  return out.str();
}

std::string kind_text(SingularKind kind) {
  switch (kind) {
    case SingularKind::SADDLE: return "saddle";
    case SingularKind::STABLE_NODE: return "stable node";
    case SingularKind::UNSTABLE_NODE: return "unstable node";
    case SingularKind::SADDLE_NODE: return "saddle-node";
  }
  return "?";
}

std::string sector_text(SectorType t) {
  switch (t) {
    case SectorType::HYPERBOLIC: return "hyperbolic";
    case SectorType::ELLIPTIC: return "elliptic";
    case SectorType::PARABOLIC: return "parabolic";
  }
  return "?";
}

}  // namespace

AnalysisReport analyze_field(const QHField& field, double tol) {
  AnalysisReport rep;
  const QHField X = normalize_weights(field);
  rep.signature = X.w;
  rep.membership = check_membership(X.w.p, X.w.q, X.w.m);
  validate(X);
  rep.theta = theta_membership(X.w);
  rep.verdict = classify(X, tol);
  if (rep.verdict.verdict == Verdict::DEGENERATE_RADIAL) return rep;

  const EtaData eta = compute_eta(X);
  try {
    rep.normal_form = normal_form(X, eta);
  } catch (const Error&) {
    rep.normal_form = std::nullopt;  // the shape matches no weight equation
  }
  rep.singularities = infinite_singularities(X, eta);
  if (rep.verdict.portrait == Portrait::SECTORED &&
      !rep.singularities.empty()) {
    rep.sectors = origin_sectors(rep.singularities);
    if (rep.verdict.verdict == Verdict::STABLE)
      rep.sequence = render_sequence(sign_sequence(X, rep.singularities));
  }
  return rep;
}

std::string render_report_json(const AnalysisReport& report) {
  json j;
  j["signature"] = {{"p", report.signature.p},
                    {"q", report.signature.q},
                    {"m", report.signature.m}};
  j["membership"] = {{"nonempty", report.membership.nonempty},
                     {"k1", report.membership.k1},
                     {"k2", report.membership.k2},
                     {"dimension", report.membership.coefficient_dimension}};
  json members = json::array();
  for (int i = 0; i < 4; ++i)
    if (report.theta.in_theta[static_cast<size_t>(i)]) members.push_back(i + 1);
  j["theta"] = {{"members", members},
                {"r", report.theta.r ? json(*report.theta.r) : json()}};
  j["verdict"] = verdict_name(report.verdict.verdict);
  // A radial multiple has no well-defined portrait — the verdict is the
  // whole story, so the portrait slot stays null.
  if (report.verdict.verdict == Verdict::DEGENERATE_RADIAL)
    j["portrait"] = nullptr;
  else
    j["portrait"] = portrait_name(report.verdict.portrait);
  j["reasons"] = report.verdict.reasons;
  if (report.verdict.integral) {
    const ReturnIntegral& ri = *report.verdict.integral;
    j["integral"] = {{"value", ri.value},
                     {"sign", ri.sign},
                     {"error_bound", ri.error_bound},
                     {"ambiguous", ri.ambiguous}};
  } else {
    j["integral"] = nullptr;
  }
  if (report.normal_form) {
    j["normal_form"] = {{"case", case_letter(report.normal_form->form_case)},
                        {"r", report.normal_form->r},
                        {"eta01_nonzero", report.normal_form->boundary.first},
                        {"eta10_nonzero", report.normal_form->boundary.second}};
  } else {
    j["normal_form"] = nullptr;
  }
  json sing = json::array();
  for (const InfinitySingularity& s : report.singularities) {
    json one;
    one["chart"] = axis_name(s.chart);
    one["lambda"] = s.lambda ? root_json(*s.lambda) : json();
    one["kind"] = singular_kind_name(s.kind);
    one["sigma"] = s.sigma_sign;
    one["nu"] = s.nu_sign;
    sing.push_back(std::move(one));
  }
  j["singularities"] = std::move(sing);
  if (report.sectors) {
    json types = json::array();
    for (SectorType t : report.sectors->sectors)
      types.push_back(sector_type_name(t));
    j["sectors"] = {{"types", std::move(types)},
                    {"separatrices", report.sectors->separatrix_count}};
  } else {
    j["sectors"] = nullptr;
  }
  j["sequence"] = report.sequence ? json(*report.sequence) : json();
  return j.dump(2) + "\n";
}

std::string render_report_text(const AnalysisReport& report) {
  std::ostringstream out;
  out << "weights: p = " << report.signature.p << ", q = " << report.signature.q
      << ", m = " << report.signature.m << "\n";
  out << "family: " << (report.membership.nonempty ? "nonempty" : "empty")
      << ", coefficient dimension " << report.membership.coefficient_dimension
      << " (" << report.membership.k1 << " + " << report.membership.k2
      << ")\n";
  out << "theta memberships:";
  bool any = false;
  for (int i = 0; i < 4; ++i)
    if (report.theta.in_theta[static_cast<size_t>(i)]) {
      out << (any ? ", " : " ") << (i + 1);
      any = true;
    }
  if (!any) out << " none";
  if (report.theta.r) out << " (r = " << *report.theta.r << ")";
  out << "\n";
  out << "verdict: " << verdict_name(report.verdict.verdict) << "\n";
  if (report.verdict.verdict != Verdict::DEGENERATE_RADIAL)
    out << "portrait: " << portrait_name(report.verdict.portrait) << "\n";
  if (report.normal_form) {
    out << "normal form: case " << case_letter(report.normal_form->form_case)
        << ", r = " << report.normal_form->r << "\n";
  }
  if (report.verdict.integral) {
    const ReturnIntegral& ri = *report.verdict.integral;
    out << "return integral: value " << ri.value << ", sign "
        << (ri.sign > 0 ? "+1" : ri.sign < 0 ? "-1" : "0");
    if (ri.ambiguous) out << " (numerically ambiguous)";
    out << "\n";
  }
  if (report.singularities.empty()) {
    out << "singular points at infinity: none\n";
  } else {
    out << "singular points at infinity: " << report.singularities.size()
        << "\n";
    int index = 0;
    for (const InfinitySingularity& s : report.singularities) {
      out << "  [" << ++index << "] chart " << axis_name(s.chart);
      if (s.lambda)
        out << ", lambda = " << root_text(*s.lambda);
      else
        out << ", polar direction";
      out << ", " << kind_text(s.kind) << ", sigma " << s.sigma_sign << ", nu "
          << s.nu_sign << "\n";
    }
  }
  if (report.sectors) {
    out << "sectors at origin:";
    for (size_t i = 0; i < report.sectors->sectors.size(); ++i)
      out << (i ? ", " : " ") << sector_text(report.sectors->sectors[i]);
    out << " (" << report.sectors->separatrix_count << " separatrices)\n";
  }
  if (report.sequence) out << "sign sequence: " << *report.sequence << "\n";
  for (const std::string& reason : report.verdict.reasons)
    out << "note: " << reason << "\n";
  return out.str();
}

int verdict_exit_code(const AnalysisReport& report) {
  switch (report.verdict.verdict) {
    case Verdict::STABLE: return 0;
    case Verdict::UNSTABLE_IN_FAMILY: return 3;
    case Verdict::DEGENERATE_RADIAL: return 4;
  }
  return 2;
}

}  // namespace qhs
