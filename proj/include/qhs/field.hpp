#pragma once

#include <vector>

#include "qhs/poly.hpp"
#include "qhs/roots.hpp"

namespace qhs {

// Planar polynomial vector field x' = P, y' = Q whose components are
// quasihomogeneous for the weight signature w = (p, q, m): every monomial
// x^i y^j of P satisfies p*i + q*j = p - 1 + m, and of Q, p*i + q*j = q - 1 + m.
struct QHField {
  WeightSignature w;
  BivarPoly P;
  BivarPoly Q;
};

// Size of the family for a given signature: k1 and k2 count the monomials
// admitted in P and Q respectively. The family is nonempty only when both
// components can be nonzero.
struct MembershipReport {
  bool nonempty = false;
  long k1 = 0;
  long k2 = 0;
  long coefficient_dimension = 0;
};

// Signature sanity (positive entries, coprime weights) plus the monomial
// counts above. Throws HypothesisViolated on a malformed signature.
MembershipReport check_membership(long p, long q, long m);

// Canonical signature: divides out gcd(p, q) (adjusting m per the degree
// identity; IndivisibleDegree when that fails) and swaps the axes so that
// p ends up odd. The returned field defines the same dynamical system.
QHField normalize_weights(const QHField& field);

// Full membership check for a concrete field: positive coprime weights,
// correct weighted degrees (WrongDegree), components not both zero
// (BothZero), and no common polynomial factor (NotCoprime).
void validate(const QHField& field);

// The polynomial eta = p*x*Q - q*y*P controlling behaviour at infinity,
// together with its restrictions to the two ends of the x-axis charts.
struct EtaData {
  BivarPoly eta;
  // Roots of eta(1, u), ascending.
  std::vector<IsolatedRoot> pos_roots;
  // Roots of eta(-1, u), descending.
  std::vector<IsolatedRoot> neg_roots;
  // eta(0, 1) and eta(0, -1); zero exactly when x = 0 is invariant.
  Rational eta_0_pos;
  Rational eta_0_neg;
  bool identically_zero = false;
};

EtaData compute_eta(const QHField& field);

// True when eta vanishes identically, i.e. the field is a multiple of the
// radial field (p*x, q*y).
bool is_radial(const QHField& field);

}  // namespace qhs
