#include "qhs/poly.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <sstream>

namespace qhs {

Rational parse_rational(const std::string& text) {
  if (text.empty()) fail(Err::ParseError, "empty rational literal");
  std::size_t pos = 0;
  bool negative = false;
  if (text[pos] == '+' || text[pos] == '-') {
    negative = (text[pos] == '-');
    ++pos;
  }
  auto read_digits = [&](const char* what) {
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start)
      fail(Err::ParseError, std::string("expected ") + what + " in rational literal '" + text + "'");
    return text.substr(start, pos - start);
  };
  std::string num = read_digits("numerator");
  std::string den = "1";
  if (pos < text.size() && text[pos] == '/') {
    ++pos;
    den = read_digits("denominator");
  }
  if (pos != text.size())
    fail(Err::ParseError, "trailing characters in rational literal '" + text + "'");
  mpz_class n(num), d(den);
  if (d == 0) fail(Err::ParseError, "zero denominator in '" + text + "'");
  Rational r(n, d);
  r.canonicalize();
  if (negative) r = -r;
  return r;
}

// ---------------------------------------------------------------------------
// UnivarPoly

Rational UnivarPoly::eval(const Rational& u) const {
  Rational acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * u + *it;
  return acc;
}

double UnivarPoly::eval_double(double u) const {
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * u + it->get_d();
  return acc;
}

UnivarPoly UnivarPoly::derivative() const {
  if (c_.size() <= 1) return UnivarPoly();
  std::vector<Rational> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = Rational(static_cast<long>(i)) * c_[i];
  return UnivarPoly(std::move(d));
}

UnivarPoly UnivarPoly::negate() const {
  std::vector<Rational> d(c_);
  for (auto& x : d) x = -x;
  return UnivarPoly(std::move(d));
}

UnivarPoly operator+(const UnivarPoly& a, const UnivarPoly& b) {
  std::vector<Rational> d(std::max(a.c_.size(), b.c_.size()), Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) d[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) d[i] += b.c_[i];
  return UnivarPoly(std::move(d));
}

UnivarPoly operator-(const UnivarPoly& a, const UnivarPoly& b) {
  return a + b.negate();
}

UnivarPoly operator*(const UnivarPoly& a, const UnivarPoly& b) {
  if (a.is_zero() || b.is_zero()) return UnivarPoly();
  std::vector<Rational> d(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) d[i + j] += a.c_[i] * b.c_[j];
  return UnivarPoly(std::move(d));
}

UnivarPoly operator*(const Rational& s, const UnivarPoly& a) {
  if (s == 0) return UnivarPoly();
  std::vector<Rational> d(a.c_);
  for (auto& x : d) x *= s;
  return UnivarPoly(std::move(d));
}

UnivarPoly::DivMod UnivarPoly::divmod(const UnivarPoly& divisor) const {
  assert(!divisor.is_zero());
  std::vector<Rational> rem(c_);
  long dd = divisor.degree();
  if (degree() < dd) return {UnivarPoly(), *this};
  std::vector<Rational> quo(degree() - dd + 1, Rational(0));
  const Rational& lead = divisor.c_.back();
  for (long i = degree(); i >= dd; --i) {
    Rational coeff = rem[i] / lead;
    if (coeff == 0) continue;
    quo[i - dd] = coeff;
    for (long j = 0; j <= dd; ++j) rem[i - dd + j] -= coeff * divisor.c_[j];
  }
  return {UnivarPoly(std::move(quo)), UnivarPoly(std::move(rem))};
}

UnivarPoly UnivarPoly::monic() const {
  if (is_zero()) return *this;
  return (Rational(1) / c_.back()) * *this;
}

std::string UnivarPoly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (long i = degree(); i >= 0; --i) {
    Rational c = c_[i];
    if (c == 0) continue;
    if (!first) out << (sgn(c) > 0 ? " + " : " - ");
    else if (sgn(c) < 0) out << "-";
    Rational a = abs(c);
    if (a != 1 || i == 0) out << to_string(a);
    if (i > 0) {
      out << var;
      if (i > 1) out << "^" << i;
    }
    first = false;
  }
  return out.str();
}

UnivarPoly univar_gcd(const UnivarPoly& a, const UnivarPoly& b) {
  if (a.is_zero() && b.is_zero()) fail(Err::BothZero, "gcd of two zero polynomials");
  UnivarPoly f = a, g = b;
  while (!g.is_zero()) {
    UnivarPoly r = f.divmod(g).remainder;
    f = g;
    g = r.monic();  // normalizing each step keeps coefficients small
  }
  return f.monic();
}

// ---------------------------------------------------------------------------
// BivarPoly

BivarPoly BivarPoly::monomial(long i, long j, const Rational& coeff) {
  BivarPoly p;
  if (coeff != 0) p.terms_[{i, j}] = coeff;
  return p;
}

Rational BivarPoly::coeff(long i, long j) const {
  auto it = terms_.find({i, j});
  return it == terms_.end() ? Rational(0) : it->second;
}

void BivarPoly::set_coeff(long i, long j, const Rational& value) {
  if (value == 0)
    terms_.erase({i, j});
  else
    terms_[{i, j}] = value;
}

Rational BivarPoly::eval(const Rational& x, const Rational& y) const {
  Rational acc(0);
  for (const auto& [e, c] : terms_) {
    Rational term = c;
    for (long k = 0; k < e.first; ++k) term *= x;
    for (long k = 0; k < e.second; ++k) term *= y;
    acc += term;
  }
  return acc;
}

double BivarPoly::eval_double(double x, double y) const {
  double acc = 0;
  for (const auto& [e, c] : terms_) {
    double term = c.get_d();
    for (long k = 0; k < e.first; ++k) term *= x;
    for (long k = 0; k < e.second; ++k) term *= y;
    acc += term;
  }
  return acc;
}

BivarPoly BivarPoly::derivative_x() const {
  BivarPoly out;
  for (const auto& [e, c] : terms_)
    if (e.first > 0) out.terms_[{e.first - 1, e.second}] = Rational(e.first) * c;
  return out;
}

BivarPoly BivarPoly::derivative_y() const {
  BivarPoly out;
  for (const auto& [e, c] : terms_)
    if (e.second > 0) out.terms_[{e.first, e.second - 1}] = Rational(e.second) * c;
  return out;
}

BivarPoly BivarPoly::swap_vars() const {
  BivarPoly out;
  for (const auto& [e, c] : terms_) out.terms_[{e.second, e.first}] = c;
  return out;
}

bool BivarPoly::divisible_by_x(long power) const {
  for (const auto& [e, c] : terms_) {
    (void)c;
    if (e.first < power) return false;
  }
  return !is_zero();
}

bool BivarPoly::divisible_by_y(long power) const {
  for (const auto& [e, c] : terms_) {
    (void)c;
    if (e.second < power) return false;
  }
  return !is_zero();
}

BivarPoly BivarPoly::shift_down(long i, long j) const {
  BivarPoly out;
  for (const auto& [e, c] : terms_) {
    assert(e.first >= i && e.second >= j);
    out.terms_[{e.first - i, e.second - j}] = c;
  }
  return out;
}

BivarPoly BivarPoly::pow(long n) const {
  assert(n >= 0);
  BivarPoly acc = monomial(0, 0, 1);
  for (long k = 0; k < n; ++k) acc = acc * *this;
  return acc;
}

BivarPoly operator+(const BivarPoly& a, const BivarPoly& b) {
  BivarPoly out = a;
  for (const auto& [e, c] : b.terms_) {
    auto it = out.terms_.find(e);
    if (it == out.terms_.end()) {
      out.terms_[e] = c;
    } else {
      it->second += c;
      if (it->second == 0) out.terms_.erase(it);
    }
  }
  return out;
}

BivarPoly operator-(const BivarPoly& a, const BivarPoly& b) { return a + (-b); }

BivarPoly BivarPoly::operator-() const {
  BivarPoly out;
  for (const auto& [e, c] : terms_) out.terms_[e] = -c;
  return out;
}

BivarPoly operator*(const BivarPoly& a, const BivarPoly& b) {
  BivarPoly out;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      BivarPoly::ExpPair e{ea.first + eb.first, ea.second + eb.second};
      auto it = out.terms_.find(e);
      if (it == out.terms_.end()) {
        Rational c = ca * cb;
        if (c != 0) out.terms_[e] = c;
      } else {
        it->second += ca * cb;
        if (it->second == 0) out.terms_.erase(it);
      }
    }
  return out;
}

BivarPoly operator*(const Rational& s, const BivarPoly& a) {
  BivarPoly out;
  if (s == 0) return out;
  for (const auto& [e, c] : a.terms_) out.terms_[e] = s * c;
  return out;
}

std::string BivarPoly::str() const {
  if (is_zero()) return "0";
  // Highest total degree first reads most naturally for these fields.
  std::vector<std::pair<ExpPair, Rational>> items(terms_.begin(), terms_.end());
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
    long ta = a.first.first + a.first.second, tb = b.first.first + b.first.second;
    if (ta != tb) return ta > tb;
    return a.first.first > b.first.first;
  });
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : items) {
    if (!first) out << (sgn(c) > 0 ? " + " : " - ");
    else if (sgn(c) < 0) out << "-";
    Rational a = abs(c);
    bool has_vars = e.first > 0 || e.second > 0;
    if (a != 1 || !has_vars) out << to_string(a);
    if (e.first > 0) {
      out << "x";
      if (e.first > 1) out << "^" << e.first;
    }
    if (e.second > 0) {
      out << "y";
      if (e.second > 1) out << "^" << e.second;
    }
    first = false;
  }
  return out.str();
}

WeightedDegree weighted_degree(const BivarPoly& poly, const WeightSignature& w) {
  WeightedDegree out;
  if (poly.is_zero()) {
    out.zero_poly = true;
    return out;
  }
  std::optional<long> d;
  for (const auto& [e, c] : poly.terms()) {
    (void)c;
    long wd = w.p * e.first + w.q * e.second;
    if (!d)
      d = wd;
    else if (*d != wd)
      return out;  // mixed weighted degrees
  }
  out.degree = d;
  return out;
}

UnivarPoly restrict_axis(const BivarPoly& poly, Axis axis) {
  // X charts substitute x = ±1 leaving y; Y charts substitute y = ±1 leaving x.
  bool on_x = (axis == Axis::X_POS || axis == Axis::X_NEG);
  bool negative = (axis == Axis::X_NEG || axis == Axis::Y_NEG);
  std::vector<Rational> coeffs;
  for (const auto& [e, c] : poly.terms()) {
    long fixed_exp = on_x ? e.first : e.second;
    long free_exp = on_x ? e.second : e.first;
    Rational value = c;
    if (negative && (fixed_exp % 2 != 0)) value = -value;
    if (static_cast<long>(coeffs.size()) <= free_exp)
      coeffs.resize(free_exp + 1, Rational(0));
    coeffs[free_exp] += value;
  }
  return UnivarPoly(std::move(coeffs));
}

}  // namespace qhs
