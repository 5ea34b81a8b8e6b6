#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qhs/field.hpp"
#include "qhs/geometry.hpp"
#include "qhs/stability.hpp"

namespace qhs {

// Everything the analyze pipeline learns about one field. `signature` holds
// the normalized weights actually used. `sequence` (text form) is attached
// exactly when the verdict is STABLE with a SECTORED portrait.
struct AnalysisReport {
  WeightSignature signature;
  MembershipReport membership;
  ThetaMembership theta;
  StabilityVerdict verdict;
  std::optional<NormalForm> normal_form;
  std::vector<InfinitySingularity> singularities;
  std::optional<SectorDecomposition> sectors;
  std::optional<std::string> sequence;
};

// normalize -> validate -> classify -> equator geometry -> sign word.
// Throws the usual validation errors; degeneracies come back as verdicts.
AnalysisReport analyze_field(const QHField& field, double tol = 1e-9);

std::string render_report_json(const AnalysisReport& report);
std::string render_report_text(const AnalysisReport& report);

// Exit code the CLI contract attaches to a verdict: 0 stable, 3 unstable
// within the family, 4 degenerate radial multiple.
int verdict_exit_code(const AnalysisReport& report);

}  // namespace qhs
