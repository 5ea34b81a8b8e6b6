#include "qhs/sequences.hpp"

#include <algorithm>
#include <optional>
#include <utility>

#include "qhs/error.hpp"
#include "qhs/stability.hpp"

namespace qhs {

namespace {

long recompute_s(const std::vector<SignPair>& e, long k) {
  long s = 0;
  for (long i = 0; i + 1 < k; ++i)
    if (e[i].nu != e[i + 1].nu) ++s;
  return s;
}

SignPair scaled(const SignPair& w, int f) { return {w.sigma * f, w.nu * f}; }

// Non-throwing symmetry test used by the orbit scan in the constructor.
bool symmetry_holds(const std::vector<SignPair>& e, ParityCase pc, long m,
                    long r) {
  const long n = static_cast<long>(e.size());
  const long k = n / 2;
  switch (pc) {
    case ParityCase::ODD_ODD: {
      const int f = (m % 2 == 0) ? -1 : 1;
      for (long i = 0; i < k; ++i)
        if (!(e[i + k] == scaled(e[i], f))) return false;
      return true;
    }
    case ParityCase::EVEN_Q_NO_BOUNDARY: {
      for (long i = 1; i <= k; ++i)
        if (!(e[2 * k - i] == scaled(e[i - 1], -1))) return false;
      return true;
    }
    case ParityCase::EVEN_Q_BOUNDARY: {
      for (long i = 1; i < k; ++i)
        if (!(e[2 * k - i - 1] == e[i - 1])) return false;
      const int f = (r % 2 == 0) ? -1 : 1;
      return e[2 * k - 1] == scaled(e[k - 1], f);
    }
  }
  return false;
}

void check_word(const std::vector<SignPair>& e, ParityCase pc, long m,
                long r) {
  const long n = static_cast<long>(e.size());
  if (n < 2 || n % 2 != 0)
    fail(Err::SymmetryViolation, "a sign word has 2k >= 2 entries");
  for (const SignPair& w : e)
    if ((w.sigma != 1 && w.sigma != -1) || (w.nu != 1 && w.nu != -1))
      fail(Err::SymmetryViolation, "signs must be +1 or -1");
  for (long i = 0; i < n; ++i)
    if (e[i].sigma * e[(i + 1) % n].sigma != -1)
      fail(Err::SymmetryViolation,
           "angular signs must alternate around the equator");
  if (!symmetry_holds(e, pc, m, r))
    fail(Err::SymmetryViolation,
         "the two halves of the word violate the parity symmetry");
}

}  // namespace

const char* parity_case_name(ParityCase pc) {
  switch (pc) {
    case ParityCase::ODD_ODD: return "ODD_ODD";
    case ParityCase::EVEN_Q_NO_BOUNDARY: return "EVEN_Q_NO_BOUNDARY";
    case ParityCase::EVEN_Q_BOUNDARY: return "EVEN_Q_BOUNDARY";
  }
  return "?";
}

const char* construction_case_name(ConstructionCase c) {
  switch (c) {
    case ConstructionCase::CASE1: return "CASE1";
    case ConstructionCase::CASE2: return "CASE2";
    case ConstructionCase::CASE3: return "CASE3";
    case ConstructionCase::CASE4: return "CASE4";
  }
  return "?";
}

SignSequence make_sequence(std::vector<SignPair> entries, ParityCase pc,
                           long m, long r) {
  check_word(entries, pc, m, r);
  SignSequence out;
  out.k = static_cast<long>(entries.size()) / 2;
  out.entries = std::move(entries);
  out.parity_case = pc;
  out.s = recompute_s(out.entries, out.k);
  return out;
}

SignSequence sign_sequence(const QHField& X,
                           const std::vector<InfinitySingularity>& points) {
  if (points.empty())
    fail(Err::HypothesisViolated,
         "fields without equator singularities carry no sign word");
  std::vector<SignPair> entries;
  entries.reserve(points.size());
  bool boundary = false;
  for (const InfinitySingularity& pt : points) {
    if (pt.chart == Axis::Y_POS || pt.chart == Axis::Y_NEG) boundary = true;
    entries.push_back({pt.sigma_sign, pt.nu_sign});
  }
  ParityCase pc = ParityCase::ODD_ODD;
  if (X.w.q % 2 == 0)
    pc = boundary ? ParityCase::EVEN_Q_BOUNDARY
                  : ParityCase::EVEN_Q_NO_BOUNDARY;
  long r = 0;
  if (pc == ParityCase::EVEN_Q_BOUNDARY) {
    const ThetaMembership theta = theta_membership(X.w);
    if (!theta.r)
      fail(Err::NoIntegerR, "no degree index exists for this signature");
    r = *theta.r;
  }
  return make_sequence(std::move(entries), pc, X.w.m, r);
}

SignSequence shift(const SignSequence& w) {
  const long n = 2 * w.k;
  SignSequence out = w;
  for (long i = 0; i < n; ++i) out.entries[i] = w.entries[(i + 1) % n];
  out.s = recompute_s(out.entries, out.k);
  return out;
}

SignSequence reverse(const SignSequence& w) {
  const long n = 2 * w.k;
  SignSequence out = w;
  for (long i = 0; i < n; ++i) out.entries[i] = w.entries[n - 1 - i];
  out.s = recompute_s(out.entries, out.k);
  return out;
}

bool is_admissible(const SignSequence& w, const WeightSignature& w_sig,
                   long r) {
  (void)w_sig;
  if (r < 0) fail(Err::KOutOfRange, "the degree index cannot be negative");
  const long k = w.k;
  if (k < 1 || k > r + 1 || (k - (r + 1)) % 2 != 0)
    fail(Err::KOutOfRange,
         "k must lie in 1..r+1 with the same parity as r+1");
  if (k < r + 1) return true;
  if (w.s < r) return true;
  for (const SignPair& e : w.entries)
    if (e.sigma == e.nu) return true;
  return false;
}

namespace {

bool in_shift_orbit(const std::vector<SignPair>& a,
                    const std::vector<SignPair>& b) {
  const long n = static_cast<long>(a.size());
  for (long t = 0; t < n; ++t) {
    bool match = true;
    for (long i = 0; i < n && match; ++i)
      if (!(a[i] == b[(i + t) % n])) match = false;
    if (match) return true;
  }
  return false;
}

}  // namespace

bool are_equivalent(const SignSequence& a, const SignSequence& b) {
  if (a.k != b.k || a.parity_case != b.parity_case)
    fail(Err::ShapeMismatch, "sign words of different shape");
  if (in_shift_orbit(a.entries, b.entries)) return true;
  return in_shift_orbit(a.entries, reverse(b).entries);
}

namespace {

std::string render_entries(const std::vector<SignPair>& e, long from) {
  std::string s;
  const long n = static_cast<long>(e.size());
  for (long i = 0; i < n; ++i) {
    if (i) s += ',';
    const SignPair& p = e[(i + from) % n];
    s += p.sigma > 0 ? '+' : '-';
    s += p.nu > 0 ? '+' : '-';
  }
  return s;
}

}  // namespace

std::string canonical_key(const SignSequence& w) {
  const long n = 2 * w.k;
  const std::vector<SignPair> rev = reverse(w).entries;
  std::string best = render_entries(w.entries, 0);
  for (long t = 0; t < n; ++t) {
    std::string c = render_entries(w.entries, t);
    if (c < best) best = std::move(c);
    c = render_entries(rev, t);
    if (c < best) best = std::move(c);
  }
  return best;
}

std::string render_sequence(const SignSequence& w) {
  return render_entries(w.entries, 0);
}

std::vector<SignPair> parse_sign_pairs(const std::string& text) {
  std::vector<SignPair> out;
  std::size_t i = 0;
  auto sign_at = [&](std::size_t j) -> int {
    if (j >= text.size() || (text[j] != '+' && text[j] != '-'))
      fail(Err::ParseError, "expected '+' or '-' in a sign word");
    return text[j] == '+' ? 1 : -1;
  };
  while (true) {
    SignPair p;
    p.sigma = sign_at(i);
    p.nu = sign_at(i + 1);
    out.push_back(p);
    i += 2;
    if (i == text.size()) break;
    if (text[i] != ',')
      fail(Err::ParseError, "expected ',' between sign pairs");
    ++i;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Representative construction.
//
// The characteristic polynomial of a candidate is assembled from simple
// rational factors,
//
//   eta = a * prefix * (x^{2q} + y^{2p})^E * prod_j (y^p - lambda_j^p x^q),
//
// where the prefix is 1, y, x or xy according to the shape, E pads the
// weighted degree with definite factors, and the nonzero lambda_j are the
// finite characteristic directions. The x-component is then
//
//   P = -(a/q) * prefixP * alpha * prod_j (y^p - mu_j^p x^q),
//
// with alpha a definite correction c (x^{2q} + 2 y^{2p})^{e'} x^{q d1} y^{p d2}
// and the mu_j interlacing the lambda's where the radial sign has to flip;
// Q is recovered exactly from eta and P. The constant c is pinned so that the
// division defining Q is exact (shapes 1 and 2) or so that Q(0,1) gets the
// requested sign (shapes 3 and 4). Every candidate is re-validated and its
// word recomputed before it is returned, so the branch search can stay
// heuristic without risking a wrong answer.
// ---------------------------------------------------------------------------

namespace {

Rational rat_pow(const Rational& base, long e) {
  Rational out(1);
  for (long i = 0; i < e; ++i) out *= base;
  return out;
}

long finite_count(ConstructionCase c, long k) {
  switch (c) {
    case ConstructionCase::CASE1: return k;
    case ConstructionCase::CASE2: return k;
    case ConstructionCase::CASE3: return k - 1;
    case ConstructionCase::CASE4: return k - 1;
  }
  return k;
}

bool wants_zero_root(ConstructionCase c) {
  return c == ConstructionCase::CASE2 || c == ConstructionCase::CASE4;
}

bool has_x_prefix(ConstructionCase c) {
  return c == ConstructionCase::CASE3 || c == ConstructionCase::CASE4;
}

std::vector<Rational> default_lambdas(ConstructionCase c, long k) {
  const long kf = finite_count(c, k);
  std::vector<Rational> out;
  out.reserve(kf);
  const long half = (kf + 1) / 2;
  for (long j = 1; j <= kf; ++j) {
    long raw = j - half;
    if (!wants_zero_root(c) && raw >= 0) ++raw;
    out.emplace_back(raw);
  }
  return out;
}

void validate_lambdas(const std::vector<Rational>& lam, ConstructionCase c,
                      long k) {
  if (static_cast<long>(lam.size()) != finite_count(c, k))
    fail(Err::CaseMismatch,
         "wrong number of characteristic directions for this shape");
  long zeros = 0;
  for (std::size_t i = 0; i < lam.size(); ++i) {
    if (lam[i] == 0) ++zeros;
    if (i + 1 < lam.size() && !(lam[i] < lam[i + 1]))
      fail(Err::CaseMismatch,
           "characteristic directions must be strictly increasing");
  }
  const long need = wants_zero_root(c) ? 1 : 0;
  if (zeros != need)
    fail(Err::CaseMismatch,
         "the zero direction must appear exactly when the shape carries it");
}

// y^p - t^p x^q
BivarPoly direction_factor(const Rational& t, long p, long q) {
  BivarPoly f = BivarPoly::monomial(0, p, 1);
  if (t != 0) f = f - BivarPoly::monomial(q, 0, rat_pow(t, p));
  return f;
}

BivarPoly eta_core(ConstructionCase c, const std::vector<Rational>& lam,
                   long p, long q, long big_e) {
  BivarPoly core = BivarPoly::monomial(0, 0, 1);
  if (wants_zero_root(c)) core = core * BivarPoly::var_y();
  if (has_x_prefix(c)) core = core * BivarPoly::var_x();
  if (big_e > 0) {
    const BivarPoly definite =
        BivarPoly::monomial(2 * q, 0, 1) + BivarPoly::monomial(0, 2 * p, 1);
    core = core * definite.pow(big_e);
  }
  for (const Rational& t : lam)
    if (t != 0) core = core * direction_factor(t, p, q);
  return core;
}

struct Branch {
  int delta1 = 0;   // x^q factor in alpha (shapes 3/4 only)
  int delta2 = 0;   // y^p factor in alpha
  int b_minus = 0;  // extra flip point below every direction
  int c_sign = 1;   // sign of c; negative only allowed on shapes 3/4
};

// One fully assembled and verified candidate, or nothing.
std::optional<QHField> try_build(const WeightSignature& w_sig,
                                 ConstructionCase kase, long r,
                                 const std::vector<Rational>& lam,
                                 const std::vector<Rational>& fixed_mus,
                                 const SignSequence& word,
                                 const Branch& br) {
  const long p = w_sig.p;
  const long q = w_sig.q;
  const long k = word.k;
  const long kf = static_cast<long>(lam.size());
  if ((r + 1 - k) % 2 != 0) return std::nullopt;
  const long big_e = (r + 1 - k) / 2;
  if (big_e < 0) return std::nullopt;

  const BivarPoly core = eta_core(kase, lam, p, q, big_e);

  // Leading sign: scale the core so the first angular sign comes out right.
  int sigma_first;
  if (kf >= 1) {
    const UnivarPoly on_axis = restrict_axis(core, Axis::X_POS);
    const Rational d = on_axis.derivative().eval(lam.front());
    if (d == 0) return std::nullopt;
    sigma_first = sign_of(d);
  } else {
    // Only the polar pair remains; with a = +1 the upper polar angular sign
    // is -1 (the x-derivative of the core is positive there).
    sigma_first = -1;
  }
  const int a = word.entries.front().sigma == sigma_first ? 1 : -1;

  const bool boundary_shape = has_x_prefix(kase);
  if (br.delta2 == 1 && wants_zero_root(kase)) return std::nullopt;
  if (br.delta1 == 1 && !boundary_shape) return std::nullopt;
  if (br.c_sign < 0 && !boundary_shape) return std::nullopt;

  // Radial signs requested at the finite directions.
  std::vector<Rational> mus;
  if (!fixed_mus.empty()) {
    mus = fixed_mus;
  } else {
    // Decide where flip points go. The radial sign at direction lambda_i is
    //   a * sgn(lambda_i)^{d2} * (-1)^{#mu above lambda_i},
    // so walk from the top down, adding one mu per needed parity change.
    std::vector<int> need(kf, 1);
    for (long i = 0; i < kf; ++i) {
      int base = a * br.c_sign;
      if (br.delta2 == 1 && lam[i] < 0) base = -base;
      need[i] = word.entries[i].nu * base;  // +1 keep, -1 flip
    }
    std::vector<Rational> chosen;
    if (kf >= 1 && need[kf - 1] < 0) {
      Rational top = lam.back() + 1;
      if (top == 0) top = lam.back() + 2;
      chosen.push_back(top);
    }
    for (long i = kf - 2; i >= 0; --i) {
      if (need[i] != need[i + 1]) {
        Rational mid = (lam[i] + lam[i + 1]) / 2;
        if (mid == 0) mid = (3 * lam[i] + lam[i + 1]) / 4;
        if (mid == 0) mid = (lam[i] + 3 * lam[i + 1]) / 4;
        chosen.push_back(mid);
      }
    }
    if (br.b_minus) {
      Rational bot = kf >= 1 ? lam.front() - 1 : Rational(-1);
      if (bot == 0) bot = lam.front() - 2;
      chosen.push_back(bot);
    }
    std::sort(chosen.begin(), chosen.end());
    mus = std::move(chosen);
  }
  const long t = static_cast<long>(mus.size());

  // Weighted-degree budget for the definite part of alpha.
  const long budget = (boundary_shape ? r - 1 : r) - t;
  const long twice_e = budget - br.delta1 - br.delta2;
  if (twice_e < 0 || twice_e % 2 != 0) return std::nullopt;
  const long little_e = twice_e / 2;

  // Constant c: exact division needs c * 2^{e'} = 1 on shapes 1/2; on shapes
  // 3/4 it is free and doubles as the polar-sign knob, since the radial sign
  // at the pole is a * sgn(c 2^{e'} - 1). A negative c flips every finite
  // radial sign at once and pins the polar sign to -a, which reaches words
  // whose flip pattern would otherwise need one more mu than the degree
  // budget allows.
  Rational c = rat_pow(Rational(1, 2), little_e);
  if (br.c_sign < 0) c = -c;  // c 2^{e'} = -1
  if (boundary_shape && br.delta1 == 0) {
    const int polar_target = word.entries[k - 1].nu;
    if (br.c_sign > 0) {
      if (polar_target == a)
        c = 2 * c;  // c 2^{e'} = 2 puts the polar sign at +a
      else
        c = c / 2;  // c 2^{e'} = 1/2 puts it at -a
    } else if (polar_target != -a) {
      return std::nullopt;
    }
  }
  if (boundary_shape && br.delta1 == 1) {
    // alpha vanishes on x = 0; the polar radial sign is forced to -a.
    if (word.entries[k - 1].nu != -a) return std::nullopt;
  }

  BivarPoly alpha = BivarPoly::monomial(br.delta1 * q, br.delta2 * p, c);
  if (little_e > 0) {
    const BivarPoly definite2 =
        BivarPoly::monomial(2 * q, 0, 1) + BivarPoly::monomial(0, 2 * p, 2);
    alpha = alpha * definite2.pow(little_e);
  }

  BivarPoly h = BivarPoly::monomial(0, 0, 1);
  for (const Rational& mu : mus) {
    if (mu == 0) return std::nullopt;
    h = h * direction_factor(mu, p, q);
  }

  BivarPoly prefix_p = BivarPoly::monomial(0, p - 1, 1);
  switch (kase) {
    case ConstructionCase::CASE1: break;
    case ConstructionCase::CASE2: prefix_p = BivarPoly::monomial(0, 0, 1); break;
    case ConstructionCase::CASE3: prefix_p = BivarPoly::monomial(1, p - 1, 1); break;
    case ConstructionCase::CASE4: prefix_p = BivarPoly::monomial(1, 0, 1); break;
  }

  const BivarPoly eta = Rational(a) * core;
  const BivarPoly P = (Rational(-a) / Rational(q)) * (prefix_p * alpha * h);
  const BivarPoly numerator = eta + Rational(q) * (BivarPoly::var_y() * P);
  if (!numerator.divisible_by_x(1)) return std::nullopt;
  const BivarPoly Q = (Rational(1) / Rational(p)) * numerator.shift_down(1, 0);

  QHField f;
  f.w = w_sig;
  f.P = P;
  f.Q = Q;
  try {
    validate(f);
    const StabilityVerdict v = classify(f);
    if (v.verdict != Verdict::STABLE || v.portrait != Portrait::SECTORED)
      return std::nullopt;
    const EtaData ed = compute_eta(f);
    const std::vector<InfinitySingularity> pts = infinite_singularities(f, ed);
    const SignSequence got = sign_sequence(f, pts);
    if (got.entries != word.entries) return std::nullopt;
  } catch (const Error&) {
    return std::nullopt;
  }
  return f;
}

int derive_a_sign(const WeightSignature& w_sig, ConstructionCase kase, long r,
                  const std::vector<Rational>& lam, const SignSequence& w) {
  if ((r + 1 - w.k) % 2 != 0 || r + 1 < w.k) return 0;
  const long big_e = (r + 1 - w.k) / 2;
  if (lam.empty()) return -w.entries.front().sigma;
  const BivarPoly core = eta_core(kase, lam, w_sig.p, w_sig.q, big_e);
  const Rational d =
      restrict_axis(core, Axis::X_POS).derivative().eval(lam.front());
  if (d == 0) return 0;
  return w.entries.front().sigma == sign_of(d) ? 1 : -1;
}

}  // namespace

RepresentativeSpec default_representative_spec(const SignSequence& target,
                                               const WeightSignature& w_sig) {
  const ThetaMembership theta = theta_membership(w_sig);
  if (!theta.r)
    fail(Err::CaseMismatch, "this signature admits no stable family");
  const bool want_boundary =
      target.parity_case == ParityCase::EVEN_Q_BOUNDARY;
  int chosen = -1;
  for (int ci = 0; ci < 4; ++ci) {
    if (!theta.in_theta[static_cast<std::size_t>(ci)]) continue;
    if (w_sig.q % 2 == 0 && (ci >= 2) != want_boundary) continue;
    chosen = ci;
    break;
  }
  if (chosen < 0)
    fail(Err::CaseMismatch,
         "no shape of this signature fits the target's symmetry class");
  RepresentativeSpec spec;
  spec.kase = static_cast<ConstructionCase>(chosen);
  spec.lambda_values = default_lambdas(spec.kase, target.k);
  spec.a_sign =
      derive_a_sign(w_sig, spec.kase, *theta.r, spec.lambda_values, target);
  return spec;
}

QHField construct_representative(const RepresentativeSpec& spec,
                                 const SignSequence& target,
                                 const WeightSignature& w_sig) {
  const ThetaMembership theta = theta_membership(w_sig);
  const int ci = static_cast<int>(spec.kase);
  if (!theta.r || !theta.in_theta[static_cast<std::size_t>(ci)])
    fail(Err::CaseMismatch,
         "the requested shape is not available for this signature");
  const long r = *theta.r;

  ParityCase expected = ParityCase::ODD_ODD;
  if (w_sig.q % 2 == 0)
    expected = has_x_prefix(spec.kase) ? ParityCase::EVEN_Q_BOUNDARY
                                       : ParityCase::EVEN_Q_NO_BOUNDARY;
  if (target.parity_case != expected)
    fail(Err::CaseMismatch,
         "the target's symmetry class does not fit the requested shape");

  bool admissible = false;
  try {
    admissible = is_admissible(target, w_sig, r);
  } catch (const Error& e) {
    fail(Err::NotAdmissible, e.what());
  }
  if (!admissible)
    fail(Err::NotAdmissible, "the target word fails the admissibility test");
  const long k = target.k;
  if (spec.kase == ConstructionCase::CASE4 && k < 2)
    fail(Err::NotAdmissible,
         "the doubly invariant shape needs at least two direction pairs");

  const std::vector<Rational> lam = spec.lambda_values.empty()
                                        ? default_lambdas(spec.kase, k)
                                        : spec.lambda_values;
  validate_lambdas(lam, spec.kase, k);

  // The orbit of the target: all shifts of the word and of its reversal.
  std::vector<SignSequence> orbit;
  orbit.reserve(4 * k);
  SignSequence cur = target;
  for (long i = 0; i < 2 * k; ++i) {
    orbit.push_back(cur);
    cur = shift(cur);
  }
  cur = reverse(target);
  for (long i = 0; i < 2 * k; ++i) {
    orbit.push_back(cur);
    cur = shift(cur);
  }

  const bool boundary_shape = has_x_prefix(spec.kase);
  std::vector<Branch> branches;
  for (int d1 = 0; d1 <= (boundary_shape ? 1 : 0); ++d1)
    for (int d2 = 0; d2 <= (wants_zero_root(spec.kase) ? 0 : 1); ++d2)
      for (int bm = 0; bm <= 1; ++bm)
        for (int cs = 1; cs >= (boundary_shape ? -1 : 1); cs -= 2)
          branches.push_back({d1, d2, bm, cs});

  for (const SignSequence& w2 : orbit) {
    if (!symmetry_holds(w2.entries, w2.parity_case, w_sig.m, r)) continue;
    if (!spec.mu_values.empty()) {
      for (const Branch& br : branches) {
        auto f = try_build(w_sig, spec.kase, r, lam, spec.mu_values, w2, br);
        if (f) return *f;
      }
    }
    for (const Branch& br : branches) {
      auto f = try_build(w_sig, spec.kase, r, lam, {}, w2, br);
      if (f) return *f;
    }
  }
  fail(Err::NotAdmissible,
       "no realizable arrangement was found for the target word");
}

}  // namespace qhs
