#pragma once

// Function-field arithmetic on an odd-degree hyperelliptic model y^2 = f(x).
//
// The curve has a single point at infinity, so the canonical divisor is
// (2g-2)·∞ and L(n·∞) has the explicit basis {x^i : 2i <= n} ∪ {x^j y : 2j+2g+1 <= n}.
// Divisors may be supported at ∞ and at affine rational points with y != 0;
// at such a point the local coordinate is z = x - x0.

#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "secantflow/polynomial.hpp"
#include "secantflow/power_series.hpp"
#include "secantflow/rational.hpp"

namespace secantflow {

class CurvePoint {
 public:
  enum class Kind { Infinity, Affine };

  static CurvePoint infinity() { return CurvePoint(); }
  /// Does not check the curve equation; see HyperellipticCurve::point.
  static CurvePoint affine(Rational x, Rational y);

  Kind kind() const { return kind_; }
  bool is_infinity() const { return kind_ == Kind::Infinity; }
  const Rational& x() const { return x_; }
  const Rational& y() const { return y_; }

  /// ∞ sorts first, then affine points by (x, y).
  friend std::strong_ordering operator<=>(const CurvePoint& a, const CurvePoint& b);
  friend bool operator==(const CurvePoint& a, const CurvePoint& b) { return (a <=> b) == 0; }

 private:
  CurvePoint() = default;
  Kind kind_ = Kind::Infinity;
  Rational x_;
  Rational y_;
};

std::string to_string(const CurvePoint& p);

/// Finite formal integer combination of curve points; zero multiplicities are never stored.
class Divisor {
 public:
  Divisor() = default;

  static Divisor point(const CurvePoint& p, int multiplicity = 1);
  static Divisor at_infinity(int multiplicity);

  int degree() const;
  bool is_effective() const;
  bool is_zero() const { return terms_.empty(); }
  int multiplicity(const CurvePoint& p) const;
  int infinity_multiplicity() const { return multiplicity(CurvePoint::infinity()); }
  const std::map<CurvePoint, int>& terms() const { return terms_; }
  std::vector<CurvePoint> support() const;

  Divisor positive_part() const;
  Divisor negative_part() const;  // returned effective: -min(D, 0)

  Divisor& add(const CurvePoint& p, int multiplicity);
  Divisor& operator+=(const Divisor& rhs);
  Divisor& operator-=(const Divisor& rhs);
  friend Divisor operator+(Divisor a, const Divisor& b) { return a += b; }
  friend Divisor operator-(Divisor a, const Divisor& b) { return a -= b; }
  friend Divisor operator*(int k, const Divisor& d);
  friend bool operator==(const Divisor& a, const Divisor& b) { return a.terms_ == b.terms_; }
  friend bool operator<(const Divisor& a, const Divisor& b) { return a.terms_ < b.terms_; }

 private:
  std::map<CurvePoint, int> terms_;
};

/// Componentwise a <= b.
bool leq(const Divisor& a, const Divisor& b);
/// Pointwise minimum (the largest common effective part of two effective divisors).
Divisor gcd(const Divisor& a, const Divisor& b);
/// Pointwise maximum.
Divisor lcm(const Divisor& a, const Divisor& b);

std::string to_string(const Divisor& d);

class HyperellipticCurve {
 public:
  /// Validates: deg f odd, >= 5, f squarefree.
  static HyperellipticCurve make(std::vector<Rational> f_coeffs);

  const Polynomial& f() const { return f_; }
  int genus() const { return genus_; }

  bool on_curve(const CurvePoint& p) const;
  bool is_weierstrass(const CurvePoint& p) const;
  /// Affine point, checked against the curve equation (InvalidPoint otherwise).
  CurvePoint point(const Rational& x, const Rational& y) const;
  CurvePoint conjugate(const CurvePoint& p) const;
  Divisor canonical() const { return Divisor::at_infinity(2 * genus_ - 2); }

  /// Expansion of y in z = x - x0 at an affine non-Weierstrass point.
  PowerSeries y_expansion(const CurvePoint& p, std::size_t precision) const;

 private:
  HyperellipticCurve(Polynomial f, int genus) : f_(std::move(f)), genus_(genus) {}
  Polynomial f_;
  int genus_ = 0;
};

inline HyperellipticCurve make_curve(std::vector<Rational> f_coeffs) {
  return HyperellipticCurve::make(std::move(f_coeffs));
}

/// Function field element (a(x) + b(x)·y) / den(x).
class RationalFunction {
 public:
  RationalFunction() : den_(Polynomial::constant(1)) {}
  RationalFunction(Polynomial a, Polynomial b, Polynomial den);

  static RationalFunction constant(const Rational& c);
  static RationalFunction x();
  static RationalFunction y();
  static RationalFunction polynomial(Polynomial a) { return {std::move(a), {}, Polynomial::constant(1)}; }

  const Polynomial& a() const { return a_; }
  const Polynomial& b() const { return b_; }
  const Polynomial& den() const { return den_; }
  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

  RationalFunction& operator*=(const Rational& c);
  friend RationalFunction operator*(RationalFunction h, const Rational& c) { return h *= c; }
  friend RationalFunction operator*(const Rational& c, RationalFunction h) { return h *= c; }
  friend RationalFunction operator+(const RationalFunction& h, const RationalFunction& k);
  friend RationalFunction operator-(const RationalFunction& h, const RationalFunction& k);
  /// Structural equality of the stored representation.
  friend bool operator==(const RationalFunction& h, const RationalFunction& k) = default;

  std::string to_string() const;

 private:
  Polynomial a_;
  Polynomial b_;
  Polynomial den_;
};

/// Product in the function field (uses y^2 = f).
RationalFunction multiply(const HyperellipticCurve& curve, const RationalFunction& h, const RationalFunction& k);

/// Same function as an element of Q(x) ⊕ Q(x)·y, up to representation.
bool same_function(const RationalFunction& h, const RationalFunction& k);

struct JetVector {
  CurvePoint point;
  std::size_t order = 0;
  std::vector<Rational> values;  // Taylor coefficients z^0 .. z^order
};

struct SectionSpace {
  Divisor divisor;
  std::vector<RationalFunction> basis;
  std::size_t dim() const { return basis.size(); }
};

/// Laurent data of a nonzero function at an affine non-Weierstrass point:
/// h = z^valuation · (coefficients[0] + coefficients[1] z + ...).
struct LaurentExpansion {
  int valuation = 0;
  std::vector<Rational> coefficients;
};

/// Precomputed local data at one affine non-Weierstrass point, reused across many
/// expansions. Immutable once built.
class LocalChart {
 public:
  LocalChart(const HyperellipticCurve& curve, const CurvePoint& p, std::size_t precision);

  const CurvePoint& point() const { return point_; }
  /// Leading `count` Laurent coefficients of h starting at its valuation.
  LaurentExpansion laurent(const RationalFunction& h, std::size_t count) const;
  /// Coefficients of z^start .. z^{start+count-1}; start may be negative. Throws PoleAtPoint
  /// if h has a pole of order greater than -start.
  std::vector<Rational> coefficients_from(const RationalFunction& h, int start, std::size_t count) const;

 private:
  PowerSeries numerator_series(const RationalFunction& h, std::size_t precision) const;
  const HyperellipticCurve* curve_;
  CurvePoint point_;
  std::size_t precision_;
  PowerSeries y_;
};

/// Throws UnsupportedSupport unless every affine support point is a non-Weierstrass
/// point of the curve.
void check_admissible_support(const HyperellipticCurve& curve, const Divisor& d);

SectionSpace riemann_roch_space(const HyperellipticCurve& curve, const Divisor& d);
std::size_t h0_dim(const HyperellipticCurve& curve, const Divisor& d);
/// h^1(D) = h^0(K - D) with K = (2g-2)·∞.
std::size_t h1_dim(const HyperellipticCurve& curve, const Divisor& d);

/// Signed order of a nonzero function at a point (∞ or affine non-Weierstrass).
int valuation(const HyperellipticCurve& curve, const RationalFunction& h, const CurvePoint& p);

JetVector jet(const HyperellipticCurve& curve, const RationalFunction& h, const CurvePoint& p, std::size_t order);
std::size_t vanishing_order(const HyperellipticCurve& curve, const RationalFunction& h, const CurvePoint& p);

/// div(h) + D >= 0, checked at ∞, at supp D, and at every point over a root of
/// den(h) among the x-coordinates of supp D. Functions whose denominators have
/// other roots are rejected.
bool satisfies_divisor_bound(const HyperellipticCurve& curve, const RationalFunction& h, const Divisor& d);

/// Number of linearly independent functions in `fs` over Q.
std::size_t function_rank(const std::vector<RationalFunction>& fs);

}  // namespace secantflow
