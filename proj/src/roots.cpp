#include "qhs/roots.hpp"

#include <algorithm>
#include <cassert>

namespace qhs {

namespace {

// Sturm chain of a square-free polynomial: p, p', then negated remainders.
std::vector<UnivarPoly> sturm_chain(const UnivarPoly& p) {
  std::vector<UnivarPoly> chain;
  chain.push_back(p);
  UnivarPoly d = p.derivative();
  if (d.is_zero()) return chain;
  chain.push_back(d);
  while (true) {
    const UnivarPoly& a = chain[chain.size() - 2];
    const UnivarPoly& b = chain.back();
    UnivarPoly r = a.divmod(b).remainder;
    if (r.is_zero()) break;
    UnivarPoly next = r.negate();
    // Scale by a positive constant only; monic() could flip every sign.
    chain.push_back((Rational(1) / abs(next.leading())) * next);
  }
  return chain;
}

// Sign variations of the chain at u, zeros skipped.
long variations(const std::vector<UnivarPoly>& chain, const Rational& u) {
  long count = 0;
  int prev = 0;
  for (const auto& poly : chain) {
    int s = sign_of(poly.eval(u));
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++count;
    prev = s;
  }
  return count;
}

// Strict bound on the absolute value of every real root.
Rational root_bound(const UnivarPoly& p) {
  assert(p.degree() >= 1);
  Rational lead = abs(p.leading());
  Rational biggest(0);
  for (long i = 0; i < p.degree(); ++i) {
    Rational a = abs(p.coeff(i)) / lead;
    if (a > biggest) biggest = a;
  }
  return biggest + 2;
}

// Divisors of n (n >= 1), ascending.
std::vector<long> divisors(long n) {
  std::vector<long> small, large;
  for (long d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    small.push_back(d);
    if (d != n / d) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

constexpr long kRationalRootCap = 1000000;

// Candidate rational roots of a primitive integer polynomial, by the
// rational root theorem; empty when the constants are too large to factor.
std::vector<Rational> rational_root_candidates(const UnivarPoly& g) {
  // Clear denominators first.
  mpz_class den_lcm(1);
  for (const auto& c : g.coeffs()) {
    mpz_class d = c.get_den();
    mpz_class gg;
    mpz_gcd(gg.get_mpz_t(), den_lcm.get_mpz_t(), d.get_mpz_t());
    den_lcm = den_lcm / gg * d;
  }
  std::vector<mpz_class> z;
  for (const auto& c : g.coeffs()) {
    Rational v = c * Rational(den_lcm);
    assert(v.get_den() == 1);
    z.push_back(v.get_num());
  }
  mpz_class content(0);
  for (const auto& v : z) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
  if (content > 1)
    for (auto& v : z) v /= content;

  mpz_class a0 = abs(z.front());
  mpz_class an = abs(z.back());
  assert(a0 != 0);  // caller strips the root at zero first
  if (a0 > kRationalRootCap || an > kRationalRootCap) return {};
  std::vector<Rational> out;
  for (long num : divisors(a0.get_si()))
    for (long den : divisors(an.get_si())) {
      Rational r(num, den);
      r.canonicalize();
      out.push_back(r);
      out.push_back(-r);
    }
  return out;
}

struct Interval {
  Rational lo;
  Rational hi;
  long count;
};

void append_exact_root(std::vector<IsolatedRoot>& out, const Rational& value,
                       long multiplicity) {
  IsolatedRoot r;
  r.lo = value;
  r.hi = value;
  r.multiplicity = multiplicity;
  r.exact_value = value;
  r.defining = UnivarPoly({-value, Rational(1)});
  out.push_back(r);
}

// All roots of one square-free factor; multiplicity is attached verbatim.
void roots_of_squarefree(UnivarPoly g, long multiplicity,
                         std::vector<IsolatedRoot>& out) {
  if (g.degree() < 1) return;
  // Root at zero.
  if (g.coeff(0) == 0) {
    append_exact_root(out, Rational(0), multiplicity);
    std::vector<Rational> shifted(g.coeffs().begin() + 1, g.coeffs().end());
    g = UnivarPoly(std::move(shifted));
    if (g.degree() < 1) return;
  }
  // Cheap rational roots.
  for (const Rational& cand : rational_root_candidates(g)) {
    if (g.eval(cand) != 0) continue;
    append_exact_root(out, cand, multiplicity);
    auto qr = g.divmod(UnivarPoly({-cand, Rational(1)}));
    assert(qr.remainder.is_zero());
    g = qr.quotient;
    if (g.degree() < 1) return;
  }
  // Bisection guided by Sturm counts. If a midpoint lands exactly on a root
  // we record it, divide it out, and restart with the smaller polynomial.
  while (g.degree() >= 1) {
    auto chain = sturm_chain(g);
    Rational bound = root_bound(g);
    assert(g.eval(-bound) != 0 && g.eval(bound) != 0);
    long total = variations(chain, -bound) - variations(chain, bound);
    std::vector<Interval> work{{-bound, bound, total}};
    // Interval roots of this pass are committed only if no restart happens;
    // a restart re-isolates the smaller polynomial from scratch.
    std::vector<IsolatedRoot> pass;
    bool restarted = false;
    while (!work.empty()) {
      Interval iv = work.back();
      work.pop_back();
      if (iv.count == 0) continue;
      int slo = sign_of(g.eval(iv.lo));
      int shi = sign_of(g.eval(iv.hi));
      assert(slo != 0 && shi != 0);
      if (iv.count == 1 && slo * shi < 0) {
        IsolatedRoot r;
        r.lo = iv.lo;
        r.hi = iv.hi;
        r.multiplicity = multiplicity;
        r.defining = g;
        pass.push_back(r);
        continue;
      }
      Rational mid = (iv.lo + iv.hi) / 2;
      if (g.eval(mid) == 0) {
        append_exact_root(out, mid, multiplicity);
        auto qr = g.divmod(UnivarPoly({-mid, Rational(1)}));
        assert(qr.remainder.is_zero());
        g = qr.quotient;
        restarted = true;
        break;
      }
      long left = variations(chain, iv.lo) - variations(chain, mid);
      work.push_back({iv.lo, mid, left});
      work.push_back({mid, iv.hi, iv.count - left});
    }
    if (!restarted) {
      out.insert(out.end(), pass.begin(), pass.end());
      break;
    }
  }
}

bool closed_overlap(const IsolatedRoot& a, const IsolatedRoot& b) {
  return std::max(a.lo, b.lo) <= std::min(a.hi, b.hi);
}

void halve(IsolatedRoot& r) {
  if (r.is_exact()) return;
  refine_interval(r, (r.hi - r.lo) / 2);
}

}  // namespace

double IsolatedRoot::approx() const {
  return to_double(midpoint());
}

Rational IsolatedRoot::midpoint() const {
  if (exact_value) return *exact_value;
  return (lo + hi) / 2;
}

void refine_interval(IsolatedRoot& root, const Rational& width) {
  if (root.is_exact()) return;
  while (root.hi - root.lo > width) {
    Rational mid = (root.lo + root.hi) / 2;
    int sm = sign_of(root.defining.eval(mid));
    if (sm == 0) {
      root.lo = mid;
      root.hi = mid;
      root.exact_value = mid;
      return;
    }
    if (sign_of(root.defining.eval(root.lo)) * sm < 0)
      root.hi = mid;
    else
      root.lo = mid;
  }
}

UnivarPoly squarefree_part(const UnivarPoly& poly) {
  if (poly.is_zero()) fail(Err::ZeroPolynomial, "square-free part of zero");
  if (poly.degree() == 0) return UnivarPoly::constant(1);
  UnivarPoly g = univar_gcd(poly, poly.derivative());
  auto qr = poly.divmod(g);
  assert(qr.remainder.is_zero());
  return qr.quotient.monic();
}

std::vector<std::pair<UnivarPoly, long>> squarefree_decomposition(
    const UnivarPoly& poly) {
  if (poly.is_zero()) fail(Err::ZeroPolynomial, "decomposition of zero");
  std::vector<std::pair<UnivarPoly, long>> out;
  UnivarPoly f = poly.monic();
  if (f.degree() < 1) return out;
  // Yun's algorithm.
  UnivarPoly df = f.derivative();
  UnivarPoly a = univar_gcd(f, df);
  UnivarPoly b = f.divmod(a).quotient;
  UnivarPoly c = df.divmod(a).quotient;
  UnivarPoly d = c - b.derivative();
  long i = 1;
  while (b.degree() >= 1) {
    UnivarPoly factor = univar_gcd(b, d);
    if (factor.degree() >= 1) out.emplace_back(factor.monic(), i);
    b = b.divmod(factor).quotient;
    c = d.divmod(factor).quotient;
    d = c - b.derivative();
    ++i;
  }
  return out;
}

std::vector<IsolatedRoot> isolate_real_roots(const UnivarPoly& poly) {
  if (poly.is_zero()) fail(Err::ZeroPolynomial, "root isolation of zero");
  std::vector<IsolatedRoot> out;
  if (poly.degree() < 1) return out;
  for (const auto& [factor, mult] : squarefree_decomposition(poly))
    roots_of_squarefree(factor, mult, out);
  // Factors are coprime so the roots are distinct, but isolating intervals
  // from different factors can still overlap; shrink until they separate.
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < out.size(); ++i)
      for (std::size_t j = i + 1; j < out.size(); ++j) {
        if (out[i].is_exact() && out[j].is_exact()) continue;
        if (!closed_overlap(out[i], out[j])) continue;
        halve(out[i]);
        halve(out[j]);
        changed = true;
      }
  }
  std::sort(out.begin(), out.end(),
            [](const IsolatedRoot& a, const IsolatedRoot& b) { return a.lo < b.lo; });
  return out;
}

int refine_until_sign(const IsolatedRoot& root, const UnivarPoly& probe) {
  if (probe.is_zero()) fail(Err::ProbeVanishes, "probe is identically zero");
  if (root.is_exact()) {
    int s = sign_of(probe.eval(*root.exact_value));
    if (s == 0)
      fail(Err::ProbeVanishes,
           "probe vanishes at rational root " + to_string(*root.exact_value));
    return s;
  }
  UnivarPoly common = univar_gcd(root.defining, probe);
  if (common.degree() >= 1 && sturm_count(common, root.lo, root.hi) > 0)
    fail(Err::ProbeVanishes, "probe shares the root in (" + to_string(root.lo) +
                                 ", " + to_string(root.hi) + ")");
  UnivarPoly sf = squarefree_part(probe);
  IsolatedRoot work = root;
  while (true) {
    if (sturm_count(sf, work.lo, work.hi) == 0) {
      int s = sign_of(probe.eval(work.hi));
      assert(s != 0);
      return s;
    }
    Rational mid = (work.lo + work.hi) / 2;
    int sm = sign_of(work.defining.eval(mid));
    if (sm == 0) return sign_of(probe.eval(mid));
    if (sign_of(work.defining.eval(work.lo)) * sm < 0)
      work.hi = mid;
    else
      work.lo = mid;
  }
}

long sturm_count(const UnivarPoly& poly, const Rational& a, const Rational& b) {
  if (poly.is_zero()) fail(Err::ZeroPolynomial, "Sturm count of zero");
  if (poly.degree() < 1) return 0;
  if (!(a < b)) return 0;
  UnivarPoly sf = squarefree_part(poly);
  if (sf.degree() < 1) return 0;
  auto chain = sturm_chain(sf);
  return variations(chain, a) - variations(chain, b);
}

}  // namespace qhs
