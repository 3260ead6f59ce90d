#include "secantflow/polynomial.hpp"

#include <cassert>
#include <sstream>
#include <stdexcept>

namespace secantflow {

Polynomial::Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  for (auto& c : coeffs_) c.canonicalize();
  trim();
}

Polynomial Polynomial::constant(const Rational& c) { return Polynomial({c}); }

Polynomial Polynomial::monomial(int degree, const Rational& c) {
  std::vector<Rational> coeffs(static_cast<std::size_t>(degree) + 1);
  coeffs.back() = c;
  return Polynomial(std::move(coeffs));
}

Polynomial Polynomial::linear(const Rational& root) { return Polynomial({Rational(-root), Rational(1)}); }

void Polynomial::trim() {
  while (!coeffs_.empty() && secantflow::is_zero(coeffs_.back())) coeffs_.pop_back();
}

Rational Polynomial::coeff(int k) const {
  if (k < 0 || k > degree()) return 0;
  return coeffs_[static_cast<std::size_t>(k)];
}

Rational Polynomial::evaluate(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rational> out(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) out[k - 1] = coeffs_[k] * static_cast<long>(k);
  return Polynomial(std::move(out));
}

Polynomial Polynomial::shifted(const Rational& x0) const {
  // Horner in the ring Q[z]: p(x0 + z) = (...(c_n (x0+z) + c_{n-1})(x0+z) + ...).
  Polynomial base({x0, Rational(1)});
  Polynomial acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * base + constant(*it);
  return acc;
}

Polynomial Polynomial::pow(int k) const {
  Polynomial result = constant(1);
  for (int i = 0; i < k; ++i) result = result * *this;
  return result;
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return {};
  Rational inv = 1 / leading();
  return *this * inv;
}

int Polynomial::root_multiplicity(const Rational& root) const {
  assert(!is_zero());
  Polynomial p = shifted(root);
  int k = 0;
  while (secantflow::is_zero(p.coeff(k))) ++k;
  return k;
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] += rhs.coeffs_[k];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] -= rhs.coeffs_[k];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (secantflow::is_zero(c)) {
    coeffs_.clear();
    return *this;
  }
  for (auto& a : coeffs_) a *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (is_zero(a.coeffs_[i])) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Polynomial(std::move(out));
}

Polynomial operator-(Polynomial a) { return a *= Rational(-1); }

std::string Polynomial::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    Rational c = coeff(k);
    if (secantflow::is_zero(c)) continue;
    bool negative = sgn(c) < 0;
    Rational mag = abs(c);
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    bool unit = mag == 1;
    if (!unit || k == 0) os << secantflow::to_string(mag);
    if (k > 0) {
      if (!unit) os << "*";
      os << var;
      if (k > 1) os << "^" << k;
    }
  }
  return os.str();
}

std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Rational> rem = a.coeffs();
  int db = b.degree();
  if (a.degree() < db) return {Polynomial(), a};
  std::vector<Rational> quot(static_cast<std::size_t>(a.degree() - db + 1));
  Rational lead_inv = 1 / b.leading();
  for (int k = a.degree(); k >= db; --k) {
    Rational c = rem[static_cast<std::size_t>(k)] * lead_inv;
    quot[static_cast<std::size_t>(k - db)] = c;
    if (secantflow::is_zero(c)) continue;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k - db + j)] -= c * b.coeff(j);
  }
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

Polynomial gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    Polynomial r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

}  // namespace secantflow
