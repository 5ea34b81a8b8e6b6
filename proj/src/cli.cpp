#include "qhs/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include "qhs/counting.hpp"
#include "qhs/error.hpp"
#include "qhs/parse.hpp"
#include "qhs/report.hpp"
#include "qhs/sequences.hpp"
#include "qhs/svgplot.hpp"

namespace qhs {

namespace {

// Exit-code contract: 0 ok/stable/equivalent, 1 inequivalent, 2 invalid
// input, 3 not stable, 4 degenerate radial, 5 empty family (no r),
// 6 inadmissible sequence, 7 theorem inapplicable.
int exit_code_for(Err code) {
  switch (code) {
    case Err::NoR:
    case Err::NoIntegerR:
      return 5;
    case Err::NotAdmissible:
    case Err::SymmetryViolation:
    case Err::KOutOfRange:
      return 6;
    case Err::NotStable:
      return 3;
    case Err::NotApplicable:
      return 7;
    default:
      return 2;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Err::IOError, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) fail(Err::IOError, "cannot read '" + path + "'");
  return buffer.str();
}

QHField load_field(const std::string& path) {
  const std::string text = read_file(path);
  return to_field(parse_field(text, detect_format(text)));
}

ParityCase parity_for(const WeightSignature& w, const ThetaMembership& theta) {
  if (w.q % 2 != 0) return ParityCase::ODD_ODD;
  return theta.in_theta[2] || theta.in_theta[3]
             ? ParityCase::EVEN_Q_BOUNDARY
             : ParityCase::EVEN_Q_NO_BOUNDARY;
}

// ---- analyze ---------------------------------------------------------------

int cmd_analyze(const std::string& file, const std::string& format, double tol,
                std::ostream& out) {
  const AnalysisReport report = analyze_field(load_field(file), tol);
  out << (format == "json" ? render_report_json(report)
                           : render_report_text(report));
  return verdict_exit_code(report);
}

// ---- count -----------------------------------------------------------------

int cmd_count(long p, long q, long m, bool brute_force, long r_bound,
              std::ostream& out) {
  const WeightSignature w{p, q, m};
  ClassCount formula;
  try {
    formula = count_formula(w);
  } catch (const Error& e) {
    if (e.code() != Err::NoR) throw;
    out << "Ω empty (no r)\n";
    return 5;
  }
  const ThetaMembership theta = theta_membership(w);
  out << "family (" << p << ", " << q << ", " << m << "): r = " << *theta.r
      << ", parity case " << parity_case_name(parity_for(w, theta)) << "\n";
  out << "classes without equator points (c0): " << formula.c0 << "\n";

  std::optional<ClassCount> oracle;
  if (brute_force) oracle = count_bruteforce(w, r_bound);

  out << std::setw(4) << "k" << std::setw(8) << "D" << std::setw(8) << "E"
      << std::setw(8) << "C";
  if (oracle)
    out << std::setw(8) << "D*" << std::setw(8) << "E*" << std::setw(8) << "C*"
        << "  check";
  out << "\n";
  for (const auto& [k, t] : formula.per_k) {
    out << std::setw(4) << k << std::setw(8) << t.d << std::setw(8) << t.e
        << std::setw(8) << t.c;
    if (oracle) {
      const ClassTriple& o = oracle->per_k.at(k);
      out << std::setw(8) << o.d << std::setw(8) << o.e << std::setw(8) << o.c
          << "  " << (t == o ? "ok" : "DISCREPANCY");
    }
    out << "\n";
  }
  out << "total: " << formula.total_formula;
  if (oracle) {
    out << "   enumerated: " << oracle->total_enumerated << "  "
        << (formula.total_formula == oracle->total_enumerated
                ? "ok"
                : "DISCREPANCY");
  }
  out << "\n";
  if (formula.audit) {
    out << "grand-total closed form [" << formula.audit->branch
        << "]: " << to_string(formula.audit->value) << " — "
        << (formula.audit->matches ? "matches the per-k sum"
                                   : "does not match the per-k sum "
                                     "(the per-k layer is authoritative)")
        << "\n";
  }
  return 0;
}

// ---- construct -------------------------------------------------------------

int cmd_construct(long p, long q, long m, const std::string& sequence_text,
                  std::ostream& out) {
  const WeightSignature w{p, q, m};
  const ThetaMembership theta = theta_membership(w);
  if (!theta.r) fail(Err::NoR, "the weight family has no degree index r");
  const std::vector<SignPair> entries = parse_sign_pairs(sequence_text);
  const SignSequence target =
      make_sequence(entries, parity_for(w, theta), m, *theta.r);
  const RepresentativeSpec spec = default_representative_spec(target, w);
  const QHField X = construct_representative(spec, target, w);
  out << render_field(to_document(X));
  return 0;
}

// ---- equiv -----------------------------------------------------------------

int cmd_equiv(const std::string& file1, const std::string& file2,
              std::ostream& out) {
  const AnalysisReport a = analyze_field(load_field(file1));
  const AnalysisReport b = analyze_field(load_field(file2));
  if (a.verdict.verdict != Verdict::STABLE ||
      b.verdict.verdict != Verdict::STABLE)
    fail(Err::NotStable, "equivalence is defined for stable fields only");

  bool same = false;
  const bool a_sectored = a.verdict.portrait == Portrait::SECTORED;
  const bool b_sectored = b.verdict.portrait == Portrait::SECTORED;
  if (a_sectored && b_sectored) {
    const SignSequence wa =
        make_sequence(parse_sign_pairs(*a.sequence),
                      parity_for(a.signature, a.theta), a.signature.m,
                      a.theta.r.value_or(0));
    const SignSequence wb =
        make_sequence(parse_sign_pairs(*b.sequence),
                      parity_for(b.signature, b.theta), b.signature.m,
                      b.theta.r.value_or(0));
    try {
      same = are_equivalent(wa, wb);
    } catch (const Error& e) {
      if (e.code() != Err::ShapeMismatch) throw;
      same = false;  // different length or symmetry class
    }
  } else if (!a_sectored && !b_sectored) {
    // Focus/center portraits compare by kind and rotation-integral sign.
    const int sa = a.verdict.integral ? a.verdict.integral->sign : 0;
    const int sb = b.verdict.integral ? b.verdict.integral->sign : 0;
    same = a.verdict.portrait == b.verdict.portrait && sa == sb;
  }
  out << (same ? "equivalent" : "inequivalent") << "\n";
  return same ? 0 : 1;
}

// ---- decompose -------------------------------------------------------------

int cmd_decompose(const std::string& file, long p, long q,
                  const std::string& end, const std::string& format,
                  std::ostream& out) {
  const std::string text = read_file(file);
  const FieldDocument doc = parse_field(text, detect_format(text));

  // Split both components by the weighted level p*i + q*j - weight + 1; a
  // quasihomogeneous field concentrates on a single level m.
  std::map<long, QHField> parts;
  auto add_terms = [&](const std::vector<DocTerm>& terms, bool to_p) {
    for (const DocTerm& t : terms) {
      if (t.coeff == 0) continue;
      const long level = p * t.i + q * t.j - (to_p ? p : q) + 1;
      QHField& part = parts[level];
      part.w = {p, q, level};
      BivarPoly& target = to_p ? part.P : part.Q;
      target.set_coeff(t.i, t.j, target.coeff(t.i, t.j) + t.coeff);
    }
  };
  add_terms(doc.p_terms, true);
  add_terms(doc.q_terms, false);
  if (parts.empty())
    fail(Err::ParseError, "the field has no terms to decompose");

  out << "quasihomogeneous parts for weights (" << p << ", " << q << "): m =";
  for (const auto& [level, part] : parts) out << " " << level;
  out << "\n";

  const long selected = end == "origin" ? parts.begin()->first
                                        : parts.rbegin()->first;
  out << "dominant part at " << end << ": m = " << selected << "\n";

  AnalysisReport report;
  try {
    report = analyze_field(parts.at(selected));
    if (report.verdict.verdict != Verdict::STABLE)
      fail(Err::NotApplicable,
           "dominant part not structurally stable — theorem inapplicable");
  } catch (const Error& e) {
    if (e.code() == Err::NotApplicable) throw;
    fail(Err::NotApplicable,
         std::string("dominant part not structurally stable — theorem "
                     "inapplicable (") +
             e.what() + ")");
  }
  out << "the local portrait at " << end
      << " equals the portrait of the dominant part:\n";
  out << (format == "json" ? render_report_json(report)
                           : render_report_text(report));
  return 0;
}

// ---- plot ------------------------------------------------------------------

int cmd_plot(const std::string& file, const std::string& out_path, int size,
             int trajectories, std::ostream& out) {
  const QHField X = load_field(file);
  const AnalysisReport report = analyze_field(X);
  if (report.verdict.verdict != Verdict::STABLE)
    fail(Err::NotStable, "plotting is defined for stable fields only");
  PlotOptions opts;
  opts.size = size;
  opts.trajectories = trajectories;
  const std::string svg = render_plot(X, opts);
  if (out_path == "-") {
    out << svg;
    return 0;
  }
  std::ofstream file_out(out_path, std::ios::binary);
  if (!file_out) fail(Err::IOError, "cannot open '" + out_path + "' for writing");
  file_out << svg;
  file_out.flush();
  if (!file_out) fail(Err::IOError, "cannot write '" + out_path + "'");
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"structural stability toolkit for planar quasihomogeneous "
               "polynomial vector fields"};
  app.require_subcommand(1);

  std::string file, file2, format = "text", sequence_text, end, out_path;
  double tol = 1e-9;
  long p = 1, q = 1, m = 1, r_bound = 9;
  bool brute_force = false;
  int size = 600, trajectories = 24;

  CLI::App* analyze = app.add_subcommand(
      "analyze", "classify a field and report its phase portrait");
  analyze->add_option("file", file, "field document (JSON or EXPR)")
      ->required();
  analyze->add_option("--format", format, "output format: text or json")
      ->check(CLI::IsMember({"text", "json"}));
  analyze->add_option("--tol", tol, "integral sign tolerance");

  CLI::App* count = app.add_subcommand(
      "count", "count topological classes of stable fields for (p, q, m)");
  count->add_option("p", p, "first weight")->required();
  count->add_option("q", q, "second weight")->required();
  count->add_option("m", m, "degree index")->required();
  count->add_flag("--brute-force", brute_force,
                  "cross-check against exhaustive enumeration");
  count->add_option("--r-bound", r_bound, "largest r the enumeration accepts");

  CLI::App* construct = app.add_subcommand(
      "construct", "build a stable field realizing a sign sequence");
  construct->add_option("p", p, "first weight")->required();
  construct->add_option("q", q, "second weight")->required();
  construct->add_option("m", m, "degree index")->required();
  construct->add_option("--sequence", sequence_text, "target word, e.g. \"+-,-+\"")
      ->required();

  CLI::App* equiv = app.add_subcommand(
      "equiv", "decide topological equivalence of two stable fields");
  equiv->add_option("file1", file, "first field document")->required();
  equiv->add_option("file2", file2, "second field document")->required();

  CLI::App* decompose = app.add_subcommand(
      "decompose", "analyze an end of a general field via its dominant "
                   "quasihomogeneous part");
  decompose->add_option("file", file, "field document")->required();
  decompose->add_option("--p", p, "first weight")->required();
  decompose->add_option("--q", q, "second weight")->required();
  decompose->add_option("--end", end, "origin or infinity")
      ->required()
      ->check(CLI::IsMember({"origin", "infinity"}));
  decompose->add_option("--format", format, "output format: text or json")
      ->check(CLI::IsMember({"text", "json"}));

  CLI::App* plot = app.add_subcommand(
      "plot", "render the compactified phase portrait as SVG");
  plot->add_option("file", file, "field document")->required();
  plot->add_option("-o,--out", out_path, "output path ('-' for stdout)")
      ->required();
  plot->add_option("--size", size, "image width and height in pixels");
  plot->add_option("--trajectories", trajectories, "number of seed orbits");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (analyze->parsed()) return cmd_analyze(file, format, tol, out);
    if (count->parsed()) return cmd_count(p, q, m, brute_force, r_bound, out);
    if (construct->parsed()) return cmd_construct(p, q, m, sequence_text, out);
    if (equiv->parsed()) return cmd_equiv(file, file2, out);
    if (decompose->parsed())
      return cmd_decompose(file, p, q, end, format, out);
    if (plot->parsed())
      return cmd_plot(file, out_path, size, trajectories, out);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return 2;
  }
  err << "no command given\n";
  return 2;
}

}  // namespace qhs
