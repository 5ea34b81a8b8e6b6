#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qhs/rational.hpp"

namespace qhs {

struct WeightSignature {
  long p = 1;
  long q = 1;
  long m = 1;

  friend bool operator==(const WeightSignature&, const WeightSignature&) = default;
};

enum class Axis { X_POS, X_NEG, Y_POS, Y_NEG };

// Univariate polynomial, dense coefficients, lowest degree first.
// The zero polynomial is the empty vector.
class UnivarPoly {
public:
  UnivarPoly() = default;
  explicit UnivarPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
    trim();
  }

  static UnivarPoly constant(const Rational& value) {
    return UnivarPoly({value});
  }

  bool is_zero() const { return c_.empty(); }
  // Degree of the zero polynomial is -1 by convention.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(long i) const {
    if (i < 0 || i >= static_cast<long>(c_.size())) return Rational(0);
    return c_[i];
  }
  Rational leading() const { return is_zero() ? Rational(0) : c_.back(); }

  Rational eval(const Rational& u) const;
  double eval_double(double u) const;

  UnivarPoly derivative() const;
  UnivarPoly negate() const;

  friend UnivarPoly operator+(const UnivarPoly& a, const UnivarPoly& b);
  friend UnivarPoly operator-(const UnivarPoly& a, const UnivarPoly& b);
  friend UnivarPoly operator*(const UnivarPoly& a, const UnivarPoly& b);
  friend UnivarPoly operator*(const Rational& s, const UnivarPoly& a);
  friend bool operator==(const UnivarPoly& a, const UnivarPoly& b) {
    return a.c_ == b.c_;
  }

  // Euclidean division; divisor must be nonzero.
  struct DivMod;
  DivMod divmod(const UnivarPoly& divisor) const;

  UnivarPoly monic() const;

  std::string str(const std::string& var = "u") const;

private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

struct UnivarPoly::DivMod {
  UnivarPoly quotient;
  UnivarPoly remainder;
};

// Monic gcd over the rationals.
UnivarPoly univar_gcd(const UnivarPoly& a, const UnivarPoly& b);

// Sparse bivariate polynomial over the rationals. Zero coefficients are
// never stored; the zero polynomial has an empty term map.
class BivarPoly {
public:
  using ExpPair = std::pair<long, long>;  // (i, j) for x^i y^j
  using TermMap = std::map<ExpPair, Rational>;

  BivarPoly() = default;

  static BivarPoly monomial(long i, long j, const Rational& coeff);
  static BivarPoly var_x() { return monomial(1, 0, 1); }
  static BivarPoly var_y() { return monomial(0, 1, 1); }

  bool is_zero() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }
  Rational coeff(long i, long j) const;
  void set_coeff(long i, long j, const Rational& value);

  Rational eval(const Rational& x, const Rational& y) const;
  double eval_double(double x, double y) const;

  BivarPoly derivative_x() const;
  BivarPoly derivative_y() const;

  // Exchanges the roles of x and y (exponent swap).
  BivarPoly swap_vars() const;

  // True iff x^power divides the polynomial (every term has i >= power).
  bool divisible_by_x(long power = 1) const;
  bool divisible_by_y(long power = 1) const;
  // Exact division by x^i y^j; throws ZeroPolynomial-style logic errors are
  // not possible, but non-divisibility is a caller bug and asserted.
  BivarPoly shift_down(long i, long j) const;

  BivarPoly pow(long n) const;

  friend BivarPoly operator+(const BivarPoly& a, const BivarPoly& b);
  friend BivarPoly operator-(const BivarPoly& a, const BivarPoly& b);
  friend BivarPoly operator*(const BivarPoly& a, const BivarPoly& b);
  friend BivarPoly operator*(const Rational& s, const BivarPoly& a);
  BivarPoly operator-() const;
  friend bool operator==(const BivarPoly& a, const BivarPoly& b) {
    return a.terms_ == b.terms_;
  }

  std::string str() const;

private:
  TermMap terms_;
};

struct WeightedDegree {
  // Set when the polynomial is (p,q)-quasihomogeneous and nonzero.
  std::optional<long> degree;
  // The zero polynomial is quasihomogeneous of every degree; flagged apart.
  bool zero_poly = false;
};

// Weighted degree under pi + qj = d; absent degree when the support mixes
// weighted degrees or the polynomial is zero.
WeightedDegree weighted_degree(const BivarPoly& poly, const WeightSignature& w);

// poly(1,u), poly(-1,u), poly(v,1) or poly(v,-1).
UnivarPoly restrict_axis(const BivarPoly& poly, Axis axis);

}  // namespace qhs
