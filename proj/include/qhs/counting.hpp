#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>

#include "qhs/field.hpp"
#include "qhs/rational.hpp"

namespace qhs {

// Counts for one stratum of sign words of length 2k: d counts rotation
// classes, e those rotation classes that reversal maps to themselves, and
// c the classes under the full rotation+reversal group, c = (d + e) / 2.
struct ClassTriple {
  long d = 0;
  long e = 0;
  long c = 0;
  friend bool operator==(const ClassTriple&, const ClassTriple&) = default;
};

// The grand total also has a handful of displayed closed forms. They are
// evaluated exactly (the value need not be an integer) and kept beside the
// stratum-sum total so a mismatch is preserved for reporting, never hidden.
struct ClosedFormAudit {
  std::string branch;  // which closed form applied to this weight family
  Rational value;      // its exact value
  bool matches = false;
};

// Per-stratum counts plus the two totals. count_formula fills total_formula
// (and the audit); count_bruteforce fills total_enumerated; each leaves the
// other total at zero so tests compare across the two producers.
struct ClassCount {
  std::map<long, ClassTriple> per_k;  // k in j_set(m, r), k != 0
  long c0 = 0;                        // rootless (k = 0) contribution
  long total_formula = 0;
  long total_enumerated = 0;
  std::optional<ClosedFormAudit> audit;
};

// Allowed values of k (half the number of equator singularities): every k
// between 0 and r+1 with k = r+1 (mod 2), so 0 appears exactly when r is odd.
std::set<long> j_set(long m, long r);

// Rotation-class count for one stratum. Expects a normalized signature
// (p odd) and 0 != k in j_set(m, r).
long count_D(const WeightSignature& w, long r, long k);

// Reversal-fixed rotation classes for one stratum, same domain as count_D.
long count_E(const WeightSignature& w, long r, long k);

// Class counts from the closed recurrences, with the closed-form audit.
ClassCount count_formula(const WeightSignature& w);

// Independent oracle: enumerate every admissible sign word and partition by
// the rotation/reversal group. Refuses weight families with r beyond the
// bound; the raw space is 2^{k+1} words per stratum.
ClassCount count_bruteforce(const WeightSignature& w, long r_bound = 9);

}  // namespace qhs
