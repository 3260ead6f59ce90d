#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "secantflow/polynomial.hpp"
#include "secantflow/rational.hpp"

namespace secantflow {

/// Power series in z truncated to `precision` terms (z^0 .. z^{precision-1}).
class PowerSeries {
 public:
  PowerSeries() = default;
  PowerSeries(std::vector<Rational> coeffs, std::size_t precision);

  static PowerSeries from_polynomial(const Polynomial& p, std::size_t precision);

  std::size_t precision() const { return coeffs_.size(); }
  const Rational& operator[](std::size_t k) const { return coeffs_[k]; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  /// Index of the first nonzero coefficient, if any within the precision.
  std::optional<std::size_t> valuation() const;
  PowerSeries truncated(std::size_t precision) const;
  /// Drops the first k coefficients (division by z^k); requires them to be zero.
  PowerSeries shifted_down(std::size_t k) const;

  friend PowerSeries operator+(const PowerSeries& a, const PowerSeries& b);
  friend PowerSeries operator-(const PowerSeries& a, const PowerSeries& b);
  friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b);
  friend PowerSeries operator*(PowerSeries a, const Rational& c);

 private:
  std::vector<Rational> coeffs_;
};

/// Multiplicative inverse to the given precision; requires a nonzero constant term.
PowerSeries inverse(const PowerSeries& a, std::size_t precision);

/// The unique Y with Y^2 = f and Y(0) = root0, lifted by Newton iteration with
/// precision doubling. Requires root0^2 = f(0) and root0 != 0.
PowerSeries sqrt_lift(const PowerSeries& f, const Rational& root0, std::size_t precision);

}  // namespace secantflow
