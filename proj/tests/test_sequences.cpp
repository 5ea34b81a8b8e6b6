#include <doctest.h>

#include <algorithm>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "qhs/sequences.hpp"
#include "qhs/stability.hpp"

using namespace qhs;

namespace {

QHField make_field(long p, long q, long m,
                   std::initializer_list<std::tuple<long, long, Rational>> pterms,
                   std::initializer_list<std::tuple<long, long, Rational>> qterms) {
  QHField f;
  f.w = {p, q, m};
  for (const auto& [i, j, c] : pterms) f.P.set_coeff(i, j, c);
  for (const auto& [i, j, c] : qterms) f.Q.set_coeff(i, j, c);
  return f;
}

QHField node_field() {
  return make_field(1, 2, 2, {{2, 0, 1}, {0, 1, -1}}, {{3, 0, 2}, {1, 1, -3}});
}

// w = (1,2,3) with eta = 4xy(y - x^2): both axes characteristic.
QHField boundary_field() {
  return make_field(1, 2, 3, {{3, 0, 1}, {1, 1, 1}}, {{2, 1, -2}, {0, 2, 6}});
}

// The linear saddle x' = x, y' = -y as a (1,1,1) member.
QHField saddle_field() {
  return make_field(1, 1, 1, {{1, 0, 1}}, {{0, 1, -1}});
}

SignSequence seq_of(const QHField& f) {
  EtaData eta = compute_eta(f);
  return sign_sequence(f, infinite_singularities(f, eta));
}

// Builds a full word from its first k entries using the parity-case rule.
SignSequence extend(const std::vector<SignPair>& head, ParityCase pc, long m,
                    long r) {
  const long k = static_cast<long>(head.size());
  std::vector<SignPair> e(2 * k);
  std::copy(head.begin(), head.end(), e.begin());
  auto flip = [](SignPair w, int f) { return SignPair{w.sigma * f, w.nu * f}; };
  switch (pc) {
    case ParityCase::ODD_ODD: {
      const int f = (m % 2 == 0) ? -1 : 1;
      for (long i = 0; i < k; ++i) e[i + k] = flip(head[i], f);
      break;
    }
    case ParityCase::EVEN_Q_NO_BOUNDARY:
      for (long i = 1; i <= k; ++i) e[2 * k - i] = flip(head[i - 1], -1);
      break;
    case ParityCase::EVEN_Q_BOUNDARY: {
      for (long i = 1; i < k; ++i) e[2 * k - i - 1] = head[i - 1];
      const int f = (r % 2 == 0) ? -1 : 1;
      e[2 * k - 1] = flip(head[k - 1], f);
      break;
    }
  }
  return make_sequence(e, pc, m, r);
}

// All words with a given head length for the parity case (both angular
// phases, every radial pattern on the head).
std::vector<SignSequence> all_words(long k, ParityCase pc, long m, long r) {
  std::vector<SignSequence> out;
  for (int phase = 0; phase < 2; ++phase) {
    for (long bits = 0; bits < (1L << k); ++bits) {
      std::vector<SignPair> head(k);
      for (long i = 0; i < k; ++i) {
        head[i].sigma = ((i + phase) % 2 == 0) ? 1 : -1;
        head[i].nu = (bits >> i) & 1 ? 1 : -1;
      }
      out.push_back(extend(head, pc, m, r));
    }
  }
  return out;
}

SignSequence raw_word(long k, std::vector<int> sigma, std::vector<int> nu) {
  SignSequence w;
  w.k = k;
  for (std::size_t i = 0; i < sigma.size(); ++i)
    w.entries.push_back({sigma[i], nu[i]});
  long s = 0;
  for (long i = 0; i + 1 < k; ++i)
    if (w.entries[i].nu != w.entries[i + 1].nu) ++s;
  w.s = s;
  w.parity_case = ParityCase::EVEN_Q_NO_BOUNDARY;
  return w;
}

}  // namespace

TEST_SUITE("sequences") {

TEST_CASE("word of the node example") {
  SignSequence w = seq_of(node_field());
  CHECK(w.k == 2);
  CHECK(w.parity_case == ParityCase::EVEN_Q_NO_BOUNDARY);
  CHECK(w.s == 1);
  REQUIRE(w.entries.size() == 4);
  CHECK(w.entries[0] == SignPair{-1, -1});
  CHECK(w.entries[1] == SignPair{1, 1});
  CHECK(w.entries[2] == SignPair{-1, -1});
  CHECK(w.entries[3] == SignPair{1, 1});
  CHECK(render_sequence(w) == "--,++,--,++");

  // The word is scale invariant.
  QHField scaled = node_field();
  scaled.P = Rational(3) * scaled.P;
  scaled.Q = Rational(3) * scaled.Q;
  CHECK(seq_of(scaled) == w);

  CHECK(parse_sign_pairs(render_sequence(w)) == w.entries);
}

TEST_CASE("word of the boundary example") {
  SignSequence w = seq_of(boundary_field());
  CHECK(w.k == 3);
  CHECK(w.parity_case == ParityCase::EVEN_Q_BOUNDARY);
  CHECK(w.s == 0);
  std::vector<int> sigma, nu;
  for (const SignPair& e : w.entries) {
    sigma.push_back(e.sigma);
    nu.push_back(e.nu);
  }
  CHECK(sigma == std::vector<int>{-1, 1, -1, 1, -1, 1});
  CHECK(nu == std::vector<int>{-1, -1, -1, -1, -1, 1});
}

TEST_CASE("word of an odd-weight saddle") {
  QHField f = saddle_field();
  validate(f);
  StabilityVerdict v = classify(f);
  CHECK(v.verdict == Verdict::STABLE);
  CHECK(v.portrait == Portrait::SECTORED);

  SignSequence w = seq_of(f);
  CHECK(w.k == 2);
  CHECK(w.parity_case == ParityCase::ODD_ODD);
  CHECK(w.s == 1);
  CHECK(w.entries == std::vector<SignPair>{{-1, -1}, {1, 1}, {-1, -1}, {1, 1}});
}

TEST_CASE("focus fields carry no word") {
  QHField f = make_field(1, 2, 2, {{2, 0, 1}, {0, 1, Rational(-1, 2)}},
                         {{3, 0, 1}, {1, 1, 2}});
  EtaData eta = compute_eta(f);
  auto pts = infinite_singularities(f, eta);
  CHECK(pts.empty());
  CHECK_THROWS_AS(sign_sequence(f, pts), Error);
  try {
    sign_sequence(f, pts);
  } catch (const Error& e) {
    CHECK(e.code() == Err::HypothesisViolated);
  }
}

TEST_CASE("hand-made words are validated") {
  // A valid even-m antipodal word.
  std::vector<SignPair> ok = {{1, 1}, {-1, -1}};
  SignSequence w = make_sequence(ok, ParityCase::ODD_ODD, 2, 0);
  CHECK(w.k == 1);
  CHECK(w.s == 0);

  // Polar symmetry ties the word parity to r: the same entries pass for an
  // even degree index and fail for an odd one.
  std::vector<SignPair> polar = {{1, 1}, {-1, -1}};
  CHECK_NOTHROW(make_sequence(polar, ParityCase::EVEN_Q_BOUNDARY, 3, 2));
  CHECK_THROWS_AS(make_sequence(polar, ParityCase::EVEN_Q_BOUNDARY, 3, 1),
                  Error);

  auto expect_symmetry_error = [](std::vector<SignPair> e, ParityCase pc,
                                  long m, long r) {
    try {
      make_sequence(std::move(e), pc, m, r);
      CHECK(false);
    } catch (const Error& err) {
      CHECK(err.code() == Err::SymmetryViolation);
    }
  };
  // Odd entry count, out-of-range sign, broken alternation, broken halves.
  expect_symmetry_error({{1, 1}, {-1, -1}, {1, 1}}, ParityCase::ODD_ODD, 2, 0);
  expect_symmetry_error({{1, 0}, {-1, -1}}, ParityCase::ODD_ODD, 2, 0);
  expect_symmetry_error({{1, 1}, {1, -1}}, ParityCase::ODD_ODD, 2, 0);
  expect_symmetry_error({{1, 1}, {-1, 1}}, ParityCase::ODD_ODD, 2, 0);
  expect_symmetry_error({{1, 1}, {-1, 1}, {1, -1}, {-1, 1}},
                        ParityCase::EVEN_Q_NO_BOUNDARY, 2, 0);
}

TEST_CASE("shift and reversal obey the dihedral relations") {
  std::vector<SignSequence> words = {seq_of(node_field()),
                                     seq_of(boundary_field()),
                                     seq_of(saddle_field())};
  std::mt19937 rng(5150);
  for (int trial = 0; trial < 12; ++trial) {
    const long k = 1 + static_cast<long>(rng() % 4);
    std::vector<SignPair> head(k);
    for (long i = 0; i < k; ++i) {
      head[i].sigma = (i % 2 == 0) ? 1 : -1;
      head[i].nu = (rng() % 2 == 0) ? 1 : -1;
    }
    words.push_back(extend(head, ParityCase::EVEN_Q_NO_BOUNDARY, 0, 0));
  }

  for (const SignSequence& w : words) {
    const long n = 2 * w.k;
    SignSequence cycled = w;
    for (long i = 0; i < n; ++i) cycled = shift(cycled);
    CHECK(cycled == w);

    CHECK(reverse(reverse(w)) == w);

    // reverse . shift = shift^{n-1} . reverse
    SignSequence lhs = reverse(shift(w));
    SignSequence rhs = reverse(w);
    for (long i = 0; i + 1 < n; ++i) rhs = shift(rhs);
    CHECK(lhs == rhs);

    CHECK(canonical_key(shift(w)) == canonical_key(w));
    CHECK(canonical_key(reverse(w)) == canonical_key(w));
  }

  // Shifting recomputes s.
  SignSequence shifted = shift(seq_of(node_field()));
  CHECK(shifted.entries[0] == SignPair{1, 1});
  CHECK(shifted.s == 1);
}

TEST_CASE("admissibility of the extremal strata") {
  // k = r+1 = 2, s = r = 1, all angular and radial signs opposed: excluded.
  SignSequence bad = raw_word(2, {1, -1, 1, -1}, {-1, 1, -1, 1});
  CHECK_FALSE(is_admissible(bad, {1, 2, 2}, 1));
  // The phase-shifted partner is the only other excluded word; the two are
  // equivalent to each other.
  SignSequence bad2 = raw_word(2, {-1, 1, -1, 1}, {1, -1, 1, -1});
  CHECK_FALSE(is_admissible(bad2, {1, 2, 2}, 1));
  CHECK(are_equivalent(bad, bad2));

  // Same extremal stratum but with matching signs somewhere: admitted.
  SignSequence good = raw_word(2, {1, -1, 1, -1}, {1, -1, 1, -1});
  CHECK(good.s == 1);
  CHECK(is_admissible(good, {1, 2, 2}, 1));

  // Below the extremal stratum everything is admitted.
  SignSequence low = raw_word(2, {1, -1, 1, -1}, {1, 1, -1, -1});
  CHECK(low.s == 0);
  CHECK(is_admissible(low, {1, 2, 2}, 1));
  CHECK(is_admissible(low, {1, 2, 2}, 3));

  auto expect_range_error = [](const SignSequence& w, long r) {
    try {
      is_admissible(w, {1, 2, 2}, r);
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.code() == Err::KOutOfRange);
    }
  };
  expect_range_error(low, 2);   // parity mismatch: k = 2 with r = 2
  expect_range_error(low, 0);   // k exceeds r + 1
  expect_range_error(low, -1);  // no admissible k at all
}

TEST_CASE("equivalence is the dihedral orbit") {
  SignSequence w = seq_of(node_field());
  CHECK(are_equivalent(w, w));
  CHECK(are_equivalent(w, shift(w)));
  CHECK(are_equivalent(w, reverse(w)));
  CHECK(are_equivalent(w, shift(reverse(shift(w)))));

  SignSequence a = extend({{1, 1}, {-1, 1}}, ParityCase::EVEN_Q_NO_BOUNDARY, 0, 0);
  SignSequence b = extend({{1, 1}, {-1, -1}}, ParityCase::EVEN_Q_NO_BOUNDARY, 0, 0);
  CHECK_FALSE(are_equivalent(a, b));
  CHECK(canonical_key(a) != canonical_key(b));

  // Shape guards.
  SignSequence one = extend({{1, 1}}, ParityCase::EVEN_Q_NO_BOUNDARY, 0, 0);
  CHECK_THROWS_AS(are_equivalent(w, one), Error);
  try {
    are_equivalent(w, seq_of(saddle_field()));  // same k, other parity case
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Err::ShapeMismatch);
  }

  // Canonical keys separate exactly the equivalence classes.
  std::vector<SignSequence> pool = all_words(2, ParityCase::EVEN_Q_NO_BOUNDARY, 0, 0);
  for (const SignSequence& x : pool)
    for (const SignSequence& y : pool)
      CHECK(are_equivalent(x, y) == (canonical_key(x) == canonical_key(y)));
}

TEST_CASE("sign words have a strict text grammar") {
  CHECK(parse_sign_pairs("--,++") ==
        std::vector<SignPair>{{-1, -1}, {1, 1}});
  CHECK(parse_sign_pairs("+-") == std::vector<SignPair>{{1, -1}});
  for (const std::string bad :
       {"", "+", "++,", "++,+", "+ +", "xx", "++;--", ",++"}) {
    try {
      parse_sign_pairs(bad);
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.code() == Err::ParseError);
    }
  }
}

TEST_CASE("representative construction round-trips the node word") {
  const WeightSignature sig{1, 2, 2};
  SignSequence target = seq_of(node_field());
  RepresentativeSpec spec = default_representative_spec(target, sig);
  CHECK(spec.kase == ConstructionCase::CASE1);
  CHECK(spec.a_sign != 0);
  REQUIRE(spec.lambda_values.size() == 2);

  QHField f = construct_representative(spec, target, sig);
  CHECK(f.w == sig);
  StabilityVerdict v = classify(f);
  CHECK(v.verdict == Verdict::STABLE);
  CHECK(v.portrait == Portrait::SECTORED);
  CHECK(are_equivalent(seq_of(f), target));

  // Custom direction and flip-point values are honored.
  RepresentativeSpec custom = spec;
  custom.lambda_values = {Rational(-2), Rational(3)};
  custom.mu_values = {Rational(1, 2)};
  QHField g = construct_representative(custom, target, sig);
  EtaData eta = compute_eta(g);
  REQUIRE(eta.pos_roots.size() == 2);
  REQUIRE(eta.pos_roots[0].is_exact());
  CHECK(*eta.pos_roots[0].exact_value == Rational(-2));
  CHECK(*eta.pos_roots[1].exact_value == Rational(3));
  CHECK(are_equivalent(seq_of(g), target));
}

TEST_CASE("representative construction covers small strata") {
  struct Stratum {
    WeightSignature sig;
    long r;
    ParityCase pc;
    std::vector<long> ks;
  };
  const std::vector<Stratum> strata = {
      {{1, 1, 3}, 3, ParityCase::ODD_ODD, {2, 4}},
      {{1, 1, 2}, 2, ParityCase::ODD_ODD, {1, 3}},
      {{1, 2, 2}, 1, ParityCase::EVEN_Q_NO_BOUNDARY, {2}},
      {{1, 2, 3}, 2, ParityCase::EVEN_Q_BOUNDARY, {1, 3}},
      {{1, 2, 1}, 1, ParityCase::EVEN_Q_BOUNDARY, {2}},
      {{3, 2, 7}, 2, ParityCase::EVEN_Q_BOUNDARY, {3}},
  };
  int built = 0, rejected = 0;
  for (const Stratum& st : strata) {
    ThetaMembership theta = theta_membership(st.sig);
    REQUIRE(theta.r.has_value());
    REQUIRE(*theta.r == st.r);
    for (long k : st.ks) {
      for (const SignSequence& w : all_words(k, st.pc, st.sig.m, st.r)) {
        if (!is_admissible(w, st.sig, st.r)) {
          RepresentativeSpec spec = default_representative_spec(w, st.sig);
          CHECK_THROWS_AS(construct_representative(spec, w, st.sig), Error);
          ++rejected;
          continue;
        }
        INFO("sig (", st.sig.p, ",", st.sig.q, ",", st.sig.m, ") word ",
             render_sequence(w));
        RepresentativeSpec spec = default_representative_spec(w, st.sig);
        QHField f = construct_representative(spec, w, st.sig);
        CHECK(f.w == st.sig);
        CHECK(are_equivalent(seq_of(f), w));
        ++built;
      }
    }
  }
  CHECK(built > 60);
  CHECK(rejected > 0);

  // The constructed boundary representative matches the hand-built example.
  SignSequence target = seq_of(boundary_field());
  RepresentativeSpec spec = default_representative_spec(target, {1, 2, 3});
  CHECK(spec.kase == ConstructionCase::CASE3);
  QHField f = construct_representative(spec, target, {1, 2, 3});
  CHECK(are_equivalent(seq_of(f), target));
}

TEST_CASE("explicit zero-direction shape") {
  // (1,2,4) supports both no-boundary shapes; force the one with an
  // invariant horizontal direction.
  const WeightSignature sig{1, 2, 4};
  ThetaMembership theta = theta_membership(sig);
  REQUIRE(theta.r.has_value());
  CHECK(*theta.r == 2);
  CHECK(theta.in_theta[0]);
  CHECK(theta.in_theta[1]);
  for (const SignSequence& w :
       all_words(1, ParityCase::EVEN_Q_NO_BOUNDARY, sig.m, *theta.r)) {
    RepresentativeSpec spec = default_representative_spec(w, sig);
    spec.kase = ConstructionCase::CASE2;
    spec.lambda_values.clear();
    QHField f = construct_representative(spec, w, sig);
    CHECK(f.Q.eval(1, 0) == 0);  // the horizontal axis stays characteristic
    CHECK(are_equivalent(seq_of(f), w));
  }
}

TEST_CASE("construction failure modes") {
  // Shape not available for the signature.
  SignSequence target = seq_of(node_field());
  RepresentativeSpec spec = default_representative_spec(target, {1, 2, 2});
  spec.kase = ConstructionCase::CASE3;
  try {
    construct_representative(spec, target, {1, 2, 2});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Err::CaseMismatch);
  }

  // Signature with no stable family at all.
  CHECK_THROWS_AS(default_representative_spec(target, {1, 7, 2}), Error);

  // Symmetry class incompatible with the shape.
  RepresentativeSpec spec2 = default_representative_spec(target, {1, 2, 2});
  SignSequence btarget = seq_of(boundary_field());
  try {
    construct_representative(spec2, btarget, {1, 2, 3});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Err::CaseMismatch);
  }

  // Excluded extremal word.
  SignSequence bad =
      extend({{1, 1}, {-1, 1}}, ParityCase::EVEN_Q_NO_BOUNDARY, 2, 1);
  {
    std::vector<SignPair> e = bad.entries;
    for (SignPair& x : e) x.nu = -x.sigma;
    bad = make_sequence(e, ParityCase::EVEN_Q_NO_BOUNDARY, 2, 1);
  }
  CHECK_FALSE(is_admissible(bad, {1, 2, 2}, 1));
  RepresentativeSpec spec3 = default_representative_spec(bad, {1, 2, 2});
  try {
    construct_representative(spec3, bad, {1, 2, 2});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Err::NotAdmissible);
  }

  // k out of range is reported as inadmissible.
  SignSequence wide = all_words(4, ParityCase::EVEN_Q_NO_BOUNDARY, 2, 1)[0];
  RepresentativeSpec spec4;
  spec4.kase = ConstructionCase::CASE1;
  try {
    construct_representative(spec4, wide, {1, 2, 2});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Err::NotAdmissible);
  }

  // The doubly invariant shape cannot hold a single direction pair.
  const WeightSignature quad{3, 2, 7};
  SignSequence polar =
      extend({{1, 1}}, ParityCase::EVEN_Q_BOUNDARY, quad.m, 2);
  RepresentativeSpec spec5 = default_representative_spec(polar, quad);
  CHECK(spec5.kase == ConstructionCase::CASE4);
  try {
    construct_representative(spec5, polar, quad);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Err::NotAdmissible);
  }
}

}  // TEST_SUITE
