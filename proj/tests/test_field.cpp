#include <doctest.h>

#include <functional>
#include <random>

#include "qhs/field.hpp"

using namespace qhs;

namespace {

// x' = x^2 - y/2, y' = x^3 + 2xy with weights (1,2,2): eta = x^4 + y^2.
QHField focus_field() {
  QHField f;
  f.w = {1, 2, 2};
  f.P.set_coeff(2, 0, 1);
  f.P.set_coeff(0, 1, Rational(-1, 2));
  f.Q.set_coeff(3, 0, 1);
  f.Q.set_coeff(1, 1, 2);
  return f;
}

// x' = x^2 - y, y' = 2x^3 - 3xy with weights (1,2,2): eta = 2x^4 - 5x^2y + 2y^2.
QHField node_field() {
  QHField f;
  f.w = {1, 2, 2};
  f.P.set_coeff(2, 0, 1);
  f.P.set_coeff(0, 1, -1);
  f.Q.set_coeff(3, 0, 2);
  f.Q.set_coeff(1, 1, -3);
  return f;
}

QHField radial_multiple(long p, long q, const Rational& scale) {
  QHField f;
  f.w = {p, q, 1};
  f.P.set_coeff(1, 0, scale * Rational(p));
  f.Q.set_coeff(0, 1, scale * Rational(q));
  return f;
}

Err code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  throw std::logic_error("expected a qhs::Error");
}

}  // namespace

TEST_SUITE("field") {

TEST_CASE("membership counts") {
  auto empty = check_membership(3, 7, 2);
  CHECK_FALSE(empty.nonempty);
  CHECK(empty.k1 == 0);
  CHECK(empty.k2 == 0);
  CHECK(empty.coefficient_dimension == 0);

  auto ok = check_membership(1, 2, 2);
  CHECK(ok.nonempty);
  CHECK(ok.k1 == 2);
  CHECK(ok.k2 == 2);
  CHECK(ok.coefficient_dimension == 4);

  for (long m = 1; m <= 6; ++m) {
    auto r = check_membership(1, 1, m);
    CHECK(r.k1 == m + 1);
    CHECK(r.k2 == m + 1);
    CHECK(r.nonempty);
  }

  // One-sided emptiness still reports nonempty = false.
  auto one_sided = check_membership(1, 7, 2);
  CHECK(one_sided.k1 == 1);  // x^2 only
  CHECK(one_sided.k2 == 2);  // x^8 and xy
  CHECK(one_sided.nonempty);

  CHECK(code_of([] { check_membership(0, 1, 1); }) == Err::HypothesisViolated);
  CHECK(code_of([] { check_membership(1, 1, 0); }) == Err::HypothesisViolated);
  CHECK(code_of([] { check_membership(2, 4, 3); }) == Err::HypothesisViolated);
}

TEST_CASE("weight normalization") {
  QHField f;
  f.w = {2, 4, 3};
  // normalize_weights only rewrites the signature; the polynomials ride along.
  f.P.set_coeff(2, 0, 1);
  f.Q.set_coeff(0, 1, 1);
  QHField g = normalize_weights(f);
  CHECK(g.w == WeightSignature{1, 2, 2});
  CHECK(g.P == f.P);
  CHECK(g.Q == f.Q);

  QHField h;
  h.w = {3, 9, 4};
  QHField hn = normalize_weights(h);
  CHECK(hn.w == WeightSignature{1, 3, 2});

  // Already canonical: identity.
  QHField x2 = node_field();
  QHField x2n = normalize_weights(x2);
  CHECK(x2n.w == x2.w);
  CHECK(x2n.P == x2.P);
  CHECK(x2n.Q == x2.Q);

  QHField bad;
  bad.w = {2, 4, 4};
  CHECK(code_of([&] { normalize_weights(bad); }) == Err::IndivisibleDegree);
}

TEST_CASE("normalization swaps axes to make p odd") {
  // x' = y^2, y' = x with weights (2,1): swapping gives p = 1.
  QHField f;
  f.w = {2, 1, 1};
  f.P.set_coeff(0, 2, 1);
  f.Q.set_coeff(1, 0, 1);
  QHField g = normalize_weights(f);
  CHECK(g.w.p == 1);
  CHECK(g.w.q == 2);
  CHECK(g.w.m == 1);
  // P and Q exchanged with their variables swapped.
  CHECK(g.P == BivarPoly::var_y());
  CHECK(g.Q == BivarPoly::monomial(2, 0, 1));

  // Reduction then swap: (4,2,3) -> (2,1,2) -> (1,2,2).
  QHField h = node_field();
  QHField doubled;
  doubled.w = {4, 2, 3};
  doubled.P = h.Q.swap_vars();
  doubled.Q = h.P.swap_vars();
  QHField back = normalize_weights(doubled);
  CHECK(back.w == WeightSignature{1, 2, 2});
  CHECK(back.P == h.P);
  CHECK(back.Q == h.Q);
  validate(back);
}

TEST_CASE("validation") {
  validate(focus_field());
  validate(node_field());

  QHField shared;  // P = x^2, Q = x^3: common factor x
  shared.w = {1, 2, 2};
  shared.P.set_coeff(2, 0, 1);
  shared.Q.set_coeff(3, 0, 1);
  CHECK(code_of([&] { validate(shared); }) == Err::NotCoprime);

  QHField shared_y;  // P = y^2, Q = xy: common factor y
  shared_y.w = {1, 1, 2};
  shared_y.P.set_coeff(0, 2, 1);
  shared_y.Q.set_coeff(1, 1, 1);
  CHECK(code_of([&] { validate(shared_y); }) == Err::NotCoprime);

  QHField hidden;
  hidden.w = {1, 1, 2};
  // P = (x - y)(x + y), Q = (x - y) x: share x - y, neither shares x or y,
  // so only the x = 1 slice exposes the common factor.
  hidden.P.set_coeff(2, 0, 1);
  hidden.P.set_coeff(0, 2, -1);
  hidden.Q.set_coeff(2, 0, 1);
  hidden.Q.set_coeff(1, 1, -1);
  CHECK(code_of([&] { validate(hidden); }) == Err::NotCoprime);

  QHField wrong = node_field();
  wrong.P = BivarPoly::monomial(3, 0, 1);  // x^3 has weighted degree 3, not 2
  try {
    validate(wrong);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Err::WrongDegree);
    CHECK(std::string(e.what()).find("P") != std::string::npos);
    CHECK(std::string(e.what()).find("3") != std::string::npos);
    CHECK(std::string(e.what()).find("2") != std::string::npos);
  }

  QHField mixed = node_field();
  mixed.Q = BivarPoly::var_x() + BivarPoly::var_y();  // not quasihomogeneous
  CHECK(code_of([&] { validate(mixed); }) == Err::WrongDegree);

  QHField zero;
  zero.w = {1, 2, 2};
  CHECK(code_of([&] { validate(zero); }) == Err::BothZero);

  QHField half_zero;
  half_zero.w = {1, 2, 2};
  half_zero.P.set_coeff(2, 0, 1);
  CHECK(code_of([&] { validate(half_zero); }) == Err::NotCoprime);

  QHField unnormalized;
  unnormalized.w = {2, 4, 3};
  unnormalized.P.set_coeff(2, 0, 1);
  CHECK(code_of([&] { validate(unnormalized); }) == Err::HypothesisViolated);
}

TEST_CASE("eta data for the two running examples") {
  EtaData node = compute_eta(node_field());
  CHECK_FALSE(node.identically_zero);
  CHECK(node.eta.str() == "2x^4 - 5x^2y + 2y^2");
  REQUIRE(node.pos_roots.size() == 2);
  CHECK(*node.pos_roots[0].exact_value == Rational(1, 2));
  CHECK(*node.pos_roots[1].exact_value == Rational(2));
  REQUIRE(node.neg_roots.size() == 2);
  CHECK(*node.neg_roots[0].exact_value == Rational(2));  // descending
  CHECK(*node.neg_roots[1].exact_value == Rational(1, 2));
  CHECK(node.eta_0_pos == 2);
  CHECK(node.eta_0_neg == 2);

  EtaData focus = compute_eta(focus_field());
  CHECK(focus.eta.str() == "x^4 + y^2");
  CHECK(focus.pos_roots.empty());
  CHECK(focus.neg_roots.empty());
  CHECK(focus.eta_0_pos == 1);
  CHECK(focus.eta_0_neg == 1);
}

TEST_CASE("radial fields") {
  CHECK(is_radial(radial_multiple(1, 2, 3)));
  CHECK(is_radial(radial_multiple(3, 4, Rational(-1, 7))));
  CHECK_FALSE(is_radial(node_field()));
  EtaData d = compute_eta(radial_multiple(1, 2, 1));
  CHECK(d.identically_zero);
  CHECK(d.eta.is_zero());
  CHECK(d.pos_roots.empty());

  // Quasihomogeneous multiple of the radial field: (p x h, q y h).
  QHField f;
  f.w = {1, 2, 4};
  BivarPoly h = BivarPoly::monomial(3, 0, 1) + BivarPoly::monomial(1, 1, -2);
  f.P = BivarPoly::monomial(1, 0, 1) * h;
  f.Q = Rational(2) * BivarPoly::monomial(0, 1, 1) * h;
  CHECK(is_radial(f));
}

TEST_CASE("eta invariants on random members") {
  std::mt19937 rng(424242);
  std::uniform_int_distribution<int> coeff(-6, 6);
  WeightSignature sigs[3] = {{1, 1, 3}, {1, 2, 3}, {3, 2, 8}};
  for (const auto& w : sigs) {
    for (int trial = 0; trial < 20; ++trial) {
      QHField f;
      f.w = w;
      for (long i = 0; w.p * i <= w.p - 1 + w.m; ++i) {
        long rest = w.p - 1 + w.m - w.p * i;
        if (rest % w.q == 0) f.P.set_coeff(i, rest / w.q, coeff(rng));
      }
      for (long i = 0; w.p * i <= w.q - 1 + w.m; ++i) {
        long rest = w.q - 1 + w.m - w.p * i;
        if (rest % w.q == 0) f.Q.set_coeff(i, rest / w.q, coeff(rng));
      }
      EtaData data = compute_eta(f);
      if (data.identically_zero) continue;
      auto wd = weighted_degree(data.eta, w);
      REQUIRE(wd.degree.has_value());
      CHECK(*wd.degree == w.p + w.q + w.m - 1);
      // eta(0,1) = -q * P(0,1).
      CHECK(data.eta_0_pos == Rational(-w.q) * f.P.eval(0, 1));
      // Positive and negative charts see the same number of roots
      // ... counted with the mirror u -> (-1)^q u when p is odd.
      CHECK(data.pos_roots.size() == data.neg_roots.size());
    }
  }
}

}  // TEST_SUITE
