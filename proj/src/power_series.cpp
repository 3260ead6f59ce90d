#include "secantflow/power_series.hpp"

#include <algorithm>
#include <stdexcept>

namespace secantflow {

PowerSeries::PowerSeries(std::vector<Rational> coeffs, std::size_t precision) : coeffs_(std::move(coeffs)) {
  coeffs_.resize(precision);
}

PowerSeries PowerSeries::from_polynomial(const Polynomial& p, std::size_t precision) {
  std::vector<Rational> c(precision);
  for (std::size_t k = 0; k < precision; ++k) c[k] = p.coeff(static_cast<int>(k));
  return PowerSeries(std::move(c), precision);
}

std::optional<std::size_t> PowerSeries::valuation() const {
  for (std::size_t k = 0; k < coeffs_.size(); ++k)
    if (!is_zero(coeffs_[k])) return k;
  return std::nullopt;
}

PowerSeries PowerSeries::truncated(std::size_t precision) const {
  return PowerSeries(coeffs_, std::min(precision, coeffs_.size()));
}

PowerSeries PowerSeries::shifted_down(std::size_t k) const {
  if (k > coeffs_.size()) throw std::out_of_range("shift exceeds series precision");
  return PowerSeries(std::vector<Rational>(coeffs_.begin() + static_cast<long>(k), coeffs_.end()),
                     coeffs_.size() - k);
}

PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
  std::size_t n = std::min(a.precision(), b.precision());
  std::vector<Rational> c(n);
  for (std::size_t k = 0; k < n; ++k) c[k] = a[k] + b[k];
  return PowerSeries(std::move(c), n);
}

PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) {
  std::size_t n = std::min(a.precision(), b.precision());
  std::vector<Rational> c(n);
  for (std::size_t k = 0; k < n; ++k) c[k] = a[k] - b[k];
  return PowerSeries(std::move(c), n);
}

PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
  std::size_t n = std::min(a.precision(), b.precision());
  std::vector<Rational> c(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (is_zero(a[i])) continue;
    for (std::size_t j = 0; i + j < n; ++j) c[i + j] += a[i] * b[j];
  }
  return PowerSeries(std::move(c), n);
}

PowerSeries operator*(PowerSeries a, const Rational& c) {
  for (auto& x : a.coeffs_) x *= c;
  return a;
}

PowerSeries inverse(const PowerSeries& a, std::size_t precision) {
  if (a.precision() == 0 || is_zero(a[0])) throw std::domain_error("series inverse needs a unit constant term");
  // Newton: B <- B (2 - A B), doubling the number of correct terms.
  PowerSeries b({Rational(1 / a[0])}, 1);
  std::size_t have = 1;
  while (have < precision) {
    have = std::min(2 * have, precision);
    PowerSeries ah = a.truncated(have);
    PowerSeries bh(b.coeffs(), have);
    PowerSeries two({Rational(2)}, have);
    b = bh * (two - ah * bh);
  }
  return b.truncated(precision);
}

PowerSeries sqrt_lift(const PowerSeries& f, const Rational& root0, std::size_t precision) {
  if (is_zero(root0)) throw std::domain_error("sqrt_lift needs a nonzero initial root");
  if (f.precision() < precision) throw std::domain_error("sqrt_lift: input precision too small");
  if (root0 * root0 != f[0]) throw std::domain_error("sqrt_lift: initial root does not square to f(0)");
  // Newton/Hensel: Y <- (Y + f / Y) / 2.
  PowerSeries y({root0}, 1);
  std::size_t have = 1;
  const Rational half(1, 2);
  while (have < precision) {
    have = std::min(2 * have, precision);
    PowerSeries yh(y.coeffs(), have);
    y = (yh + f.truncated(have) * inverse(yh, have)) * half;
  }
  return y.truncated(precision);
}

}  // namespace secantflow
