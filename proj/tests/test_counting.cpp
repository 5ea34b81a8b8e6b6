#include <doctest.h>

#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "qhs/counting.hpp"
#include "qhs/error.hpp"
#include "qhs/sequences.hpp"
#include "qhs/stability.hpp"

using namespace qhs;

namespace {

Err code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  throw std::logic_error("expected a qhs::Error");
}

struct Anchor {
  WeightSignature w;
  long c0 = 0;
  std::map<long, ClassTriple> per_k;
  long total = 0;
  std::string branch;
  Rational published;
  bool matches = false;
};

// Hand-checked class counts for small weight families, together with the
// exact value of the published grand total for each branch.
std::vector<Anchor> anchors() {
  return {
      {{1, 1, 1}, 2, {{2, {3, 3, 3}}}, 5, "odd weights, r odd, axis form", 3, false},
      {{1, 1, 2}, 0, {{1, {2, 2, 2}}, {3, {3, 3, 3}}}, 5, "odd weights, r even", 3, false},
      {{1, 1, 3}, 2, {{2, {4, 4, 4}}, {4, {9, 7, 8}}}, 14, "odd weights, r odd, axis form", 12, false},
      {{3, 5, 16}, 0, {{1, {0, 0, 0}}, {3, {3, 3, 3}}}, 3, "odd weights, r even", 3, true},
      {{3, 5, 23}, 2, {{2, {3, 3, 3}}}, 5, "odd weights, r odd, no-axis form", 5, true},
      {{1, 2, 2}, 2, {{2, {3, 1, 2}}}, 4, "even q, no axis roots", Rational(7) / 2, false},
      {{1, 2, 4}, 0, {{1, {2, 2, 2}}, {3, {7, 3, 5}}}, 7, "even q, no axis roots", 2, false},
      {{3, 2, 2}, 0, {{1, {1, 1, 1}}}, 1, "even q, no axis roots", -1, false},
      {{3, 2, 4}, 0, {{2, {3, 1, 2}}}, 2, "even q, horizontal axis", Rational(3) / 2, false},
      {{1, 2, 1}, 0, {{2, {3, 3, 3}}}, 3, "even q, vertical axis", 2, false},
      {{1, 2, 3}, 0, {{1, {2, 2, 2}}, {3, {7, 7, 7}}}, 9, "even q, vertical axis", 2, false},
      {{1, 2, 5}, 0, {{2, {4, 4, 4}}, {4, {15, 15, 15}}}, 19, "even q, vertical axis", Rational(11) / 2, false},
      {{3, 2, 7}, 0, {{1, {0, 0, 0}}, {3, {7, 7, 7}}}, 7, "even q, vertical axis", 2, false},
  };
}

ParityCase parity_of(const WeightSignature& w) {
  if (w.q % 2 != 0) return ParityCase::ODD_ODD;
  const ThetaMembership th = theta_membership(w);
  return th.in_theta[2] || th.in_theta[3] ? ParityCase::EVEN_Q_BOUNDARY
                                          : ParityCase::EVEN_Q_NO_BOUNDARY;
}

}  // namespace

TEST_SUITE("counting") {

TEST_CASE("stratum index sets") {
  CHECK(j_set(2, 0) == std::set<long>{1});
  CHECK(j_set(1, 1) == std::set<long>{0, 2});
  CHECK(j_set(5, 2) == std::set<long>{1, 3});
  CHECK(j_set(3, 3) == std::set<long>{0, 2, 4});
  CHECK(j_set(7, 7) == std::set<long>{0, 2, 4, 6, 8});
  CHECK(j_set(1, -1).empty());
}

TEST_CASE("class counts for pinned small families") {
  for (const Anchor& a : anchors()) {
    CAPTURE(a.w.p);
    CAPTURE(a.w.q);
    CAPTURE(a.w.m);
    const ClassCount formula = count_formula(a.w);
    CHECK(formula.c0 == a.c0);
    CHECK(formula.per_k == a.per_k);
    CHECK(formula.total_formula == a.total);
    CHECK(formula.total_enumerated == 0);

    const ClassCount oracle = count_bruteforce(a.w);
    CHECK(oracle.c0 == a.c0);
    CHECK(oracle.per_k == a.per_k);
    CHECK(oracle.total_enumerated == a.total);
    CHECK(oracle.total_formula == 0);
  }
}

TEST_CASE("published grand totals evaluated exactly") {
  for (const Anchor& a : anchors()) {
    CAPTURE(a.w.p);
    CAPTURE(a.w.q);
    CAPTURE(a.w.m);
    const ClassCount formula = count_formula(a.w);
    REQUIRE(formula.audit.has_value());
    CHECK(formula.audit->branch == a.branch);
    CHECK(formula.audit->value == a.published);
    CHECK(formula.audit->matches == a.matches);
    CHECK(formula.audit->matches == (a.published == Rational(a.total)));
  }
}

TEST_CASE("closed counts agree with enumeration over the verification grid") {
  int families = 0;
  for (long p : {1L, 3L, 5L}) {
    for (long q = 1; q <= 6; ++q) {
      if (std::gcd(p, q) != 1) continue;
      for (long m = 1; m <= 60; ++m) {
        const WeightSignature w{p, q, m};
        const ThetaMembership th = theta_membership(w);
        if (!th.r || *th.r > 7) continue;
        ++families;
        CAPTURE(p);
        CAPTURE(q);
        CAPTURE(m);
        const ClassCount formula = count_formula(w);
        const ClassCount oracle = count_bruteforce(w);
        CHECK(formula.c0 == oracle.c0);
        CHECK(formula.per_k == oracle.per_k);
        CHECK(formula.total_formula == oracle.total_enumerated);
        for (const auto& entry : formula.per_k) {
          CAPTURE(entry.first);
          const ClassTriple& t = entry.second;
          CHECK(t.e >= 0);
          CHECK(t.e <= t.d);
          CHECK((t.d + t.e) % 2 == 0);
          CHECK(t.c == (t.d + t.e) / 2);
        }
      }
    }
  }
  // The grid really exercises a spread of weight families, not a handful.
  CHECK(families >= 40);
}

TEST_CASE("orbit structure of the admissible word space") {
  // Independent of the counting code paths: enumerate every raw sign word
  // (all 4^(2k) of them), keep the valid admissible ones, and group them by
  // canonical key. Class counts and class sizes must line up.
  for (const WeightSignature w :
       {WeightSignature{1, 1, 1}, WeightSignature{1, 1, 2},
        WeightSignature{1, 2, 2}, WeightSignature{1, 2, 3}}) {
    CAPTURE(w.p);
    CAPTURE(w.q);
    CAPTURE(w.m);
    const ThetaMembership th = theta_membership(w);
    REQUIRE(th.r.has_value());
    const long r = *th.r;
    const ParityCase pc = parity_of(w);
    const ClassCount formula = count_formula(w);
    for (long k : j_set(w.m, r)) {
      if (k == 0) continue;
      CAPTURE(k);
      const long n = 2 * k;
      std::map<std::string, std::set<std::string>> classes;
      long admissible = 0;
      for (unsigned long code = 0; code < (1ul << (2 * n)); ++code) {
        std::vector<SignPair> e(static_cast<size_t>(n));
        for (long i = 0; i < n; ++i) {
          e[i].sigma = (code >> (2 * i)) & 1u ? 1 : -1;
          e[i].nu = (code >> (2 * i + 1)) & 1u ? 1 : -1;
        }
        SignSequence word;
        try {
          word = make_sequence(std::move(e), pc, w.m, r);
        } catch (const Error&) {
          continue;  // half the bit patterns fail the symmetry wrap rules
        }
        if (!is_admissible(word, w, r)) continue;
        ++admissible;
        classes[canonical_key(word)].insert(render_sequence(word));
      }
      CHECK(static_cast<long>(classes.size()) == formula.per_k.at(k).c);
      long members = 0;
      for (const auto& cls : classes) {
        members += static_cast<long>(cls.second.size());
        // The symmetry group acting on a word has order 4k, so every class
        // size divides it.
        CHECK(4 * k % static_cast<long>(cls.second.size()) == 0);
      }
      CHECK(members == admissible);
    }
  }
}

TEST_CASE("domain errors") {
  const WeightSignature none{1, 7, 2};
  CHECK(code_of([&] { count_formula(none); }) == Err::NoR);
  CHECK(code_of([&] { count_bruteforce(none); }) == Err::NoR);

  const WeightSignature big{1, 1, 10};
  CHECK(code_of([&] { count_bruteforce(big); }) == Err::BoundExceeded);
  const WeightSignature mid{1, 1, 8};
  CHECK(code_of([&] { count_bruteforce(mid, 7); }) == Err::BoundExceeded);
  CHECK(count_bruteforce(big, 10).total_enumerated ==
        count_formula(big).total_formula);

  const WeightSignature w{1, 1, 1};  // r = 1, valid k are 0 and 2
  CHECK(code_of([&] { count_D(w, 1, 0); }) == Err::KOutOfRange);
  CHECK(code_of([&] { count_E(w, 1, 0); }) == Err::KOutOfRange);
  CHECK(code_of([&] { count_D(w, 1, 4); }) == Err::KOutOfRange);
  CHECK(code_of([&] { count_E(w, 1, 4); }) == Err::KOutOfRange);
  CHECK(code_of([&] { count_D(w, 1, 1); }) == Err::KOutOfRange);
  CHECK(code_of([&] { count_D(w, -1, 1); }) == Err::KOutOfRange);
}

}  // TEST_SUITE
