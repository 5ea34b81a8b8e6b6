#pragma once

#include <string>
#include <vector>

#include "qhs/field.hpp"
#include "qhs/geometry.hpp"

namespace qhs {

// One slot of the equator sign word of a stable field: sigma is the sign of
// the angular derivative at the singular point, nu the radial one.
struct SignPair {
  int sigma = 1;
  int nu = 1;

  friend bool operator==(const SignPair&, const SignPair&) = default;
};

// How the second half of the word is tied to the first: through the antipodal
// map when q is odd, through the x-mirror when q is even, with a separate
// variant when the vertical axis is invariant and the word has polar entries.
enum class ParityCase { ODD_ODD, EVEN_Q_NO_BOUNDARY, EVEN_Q_BOUNDARY };

const char* parity_case_name(ParityCase pc);

// The combinatorial invariant of a stable sectored field: 2k sign pairs in
// equator order, the symmetry class, and the number s of nu sign changes
// across the first k entries.
struct SignSequence {
  long k = 1;
  std::vector<SignPair> entries;  // size 2k; index 0 is the first point
  ParityCase parity_case = ParityCase::ODD_ODD;
  long s = 0;

  friend bool operator==(const SignSequence&, const SignSequence&) = default;
};

// Validating factory: checks the entry count, the cyclic alternation of the
// sigma signs, and the symmetry of the given parity case (which needs m for
// ODD_ODD and r for EVEN_Q_BOUNDARY). Throws SymmetryViolation.
SignSequence make_sequence(std::vector<SignPair> entries, ParityCase pc,
                           long m, long r);

// Reads the word off the ordered equator singularities of a stable field and
// validates it as above. HypothesisViolated when the list is empty (focus and
// center fields carry no word).
SignSequence sign_sequence(const QHField& X,
                           const std::vector<InfinitySingularity>& points);

// Cyclic shift by one position.
SignSequence shift(const SignSequence& w);

// Index reversal i -> 2k - i + 1.
SignSequence reverse(const SignSequence& w);

// Whether the word labels a realizable stable stratum of the family with
// degree index r. KOutOfRange when k is outside 1..r+1 or has the wrong
// parity relative to r.
bool is_admissible(const SignSequence& w, const WeightSignature& w_sig,
                   long r);

// Same orbit under shift and reversal. ShapeMismatch when the words have
// different k or parity case.
bool are_equivalent(const SignSequence& a, const SignSequence& b);

// Lexicographically least rotation over the word and its reversal. Two words
// are equivalent exactly when their keys coincide.
std::string canonical_key(const SignSequence& w);

// Text form "+-,-+,..." (sigma then nu per pair, index 1 first).
std::string render_sequence(const SignSequence& w);
std::vector<SignPair> parse_sign_pairs(const std::string& text);

// The four shapes a stable field's characteristic polynomial can take,
// matching the four weight-equation families.
enum class ConstructionCase { CASE1, CASE2, CASE3, CASE4 };

const char* construction_case_name(ConstructionCase c);

// Recipe for realizing a target word: the simple characteristic directions
// (lambda, finite ones only), the interlacing flip points (mu, filled in
// automatically when empty), the leading sign, and the shape to build.
struct RepresentativeSpec {
  std::vector<Rational> lambda_values;
  std::vector<Rational> mu_values;
  int a_sign = 0;  // informational; derived from the word when 0
  ConstructionCase kase = ConstructionCase::CASE1;
};

// Deterministic default recipe for a target word within the family w_sig.
RepresentativeSpec default_representative_spec(const SignSequence& target,
                                               const WeightSignature& w_sig);

// Builds a validated stable field whose sign word is equivalent to target.
// Tries the target's orbit against a small set of construction branches and
// fully verifies a candidate (validation, classification, regenerated word)
// before returning it. NotAdmissible when the target fails the admissibility
// test or no branch realizes it; CaseMismatch when the requested shape is
// unavailable for w_sig or incompatible with the target's parity case.
QHField construct_representative(const RepresentativeSpec& spec,
                                 const SignSequence& target,
                                 const WeightSignature& w_sig);

}  // namespace qhs
