#pragma once

#include <string>
#include <utility>
#include <vector>

#include "secantflow/rational.hpp"

namespace secantflow {

/// Dense univariate polynomial over the rationals, coefficients stored low to high
/// with no trailing zeros.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs);

  static Polynomial constant(const Rational& c);
  static Polynomial monomial(int degree, const Rational& c = 1);
  /// x - root
  static Polynomial linear(const Rational& root);

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  Rational coeff(int k) const;
  const Rational& leading() const { return coeffs_.back(); }

  Rational evaluate(const Rational& x) const;
  Polynomial derivative() const;
  /// p(x0 + z) as a polynomial in z.
  Polynomial shifted(const Rational& x0) const;
  Polynomial pow(int k) const;
  Polynomial monic() const;
  /// Multiplicity of `root` as a zero of this (nonzero) polynomial.
  int root_multiplicity(const Rational& root) const;

  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  friend Polynomial operator-(Polynomial a);
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// Quotient and remainder; divisor must be nonzero.
std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);

/// Monic gcd (zero only if both inputs are zero).
Polynomial gcd(Polynomial a, Polynomial b);

}  // namespace secantflow
