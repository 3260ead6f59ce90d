#pragma once

// Symbolic check of the local gauge computation behind the downward-flow limit.
//
// Scalars are finite sums c · z^a η^b u^k φ^p (∂̄η)^q with a ∈ Z (Laurent in the
// local coordinate), b, k, p >= 0 and (∂̄η)^2 = 0. Here η is the bump function,
// u stands for e^{-t} and φ for the Higgs field coefficient.

#include <array>
#include <compare>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "secantflow/rational.hpp"

namespace secantflow::local {

struct Monomial {
  int z = 0;
  int eta = 0;
  int u = 0;
  int phi = 0;
  int deta = 0;
  auto operator<=>(const Monomial&) const = default;
};

class LocalScalar {
 public:
  LocalScalar() = default;
  LocalScalar(const Rational& c);  // NOLINT: constants convert implicitly
  LocalScalar(int c) : LocalScalar(Rational(c)) {}  // NOLINT
  /// Throws NegativeUExponent if mono.u < 0.
  static LocalScalar term(const Rational& c, const Monomial& mono);
  static LocalScalar z(int power) { return term(1, {.z = power}); }
  static LocalScalar eta() { return term(1, {.eta = 1}); }
  static LocalScalar u(int power) { return term(1, {.u = power}); }
  static LocalScalar phi() { return term(1, {.phi = 1}); }
  static LocalScalar deta() { return term(1, {.deta = 1}); }

  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  LocalScalar& operator+=(const LocalScalar& rhs);
  LocalScalar& operator-=(const LocalScalar& rhs);
  friend LocalScalar operator+(LocalScalar a, const LocalScalar& b) { return a += b; }
  friend LocalScalar operator-(LocalScalar a, const LocalScalar& b) { return a -= b; }
  friend LocalScalar operator-(const LocalScalar& a) { return LocalScalar() - a; }
  friend LocalScalar operator*(const LocalScalar& a, const LocalScalar& b);
  friend bool operator==(const LocalScalar& a, const LocalScalar& b) = default;

  LocalScalar pow(int k) const;
  /// Substitute a value for η.
  LocalScalar at_eta(const Rational& value) const;
  /// The u -> 0 limit: keep only the u^0 terms. Throws NegativeUExponent if a
  /// negative power of u is present.
  LocalScalar u_limit() const;

  bool has_eta() const;
  bool has_negative_z() const;
  /// Least z exponent among the terms; empty for zero.
  std::optional<int> z_order() const;
  /// Least u exponent among the terms; empty for zero.
  std::optional<int> u_order() const;

  std::string to_string() const;

 private:
  void add_term(const Monomial& mono, const Rational& c);
  std::map<Monomial, Rational> terms_;
};

class LocalMatrix {
 public:
  LocalMatrix() = default;
  LocalMatrix(LocalScalar a, LocalScalar b, LocalScalar c, LocalScalar d) : e_{std::move(a), std::move(b), std::move(c), std::move(d)} {}
  static LocalMatrix identity() { return {1, 0, 0, 1}; }
  static LocalMatrix diagonal(LocalScalar a, LocalScalar d) { return {std::move(a), 0, 0, std::move(d)}; }

  LocalScalar& operator()(int i, int j) { return e_[static_cast<std::size_t>(2 * i + j)]; }
  const LocalScalar& operator()(int i, int j) const { return e_[static_cast<std::size_t>(2 * i + j)]; }

  friend LocalMatrix operator*(const LocalMatrix& a, const LocalMatrix& b);
  friend LocalMatrix operator-(const LocalMatrix& a, const LocalMatrix& b);
  friend bool operator==(const LocalMatrix& a, const LocalMatrix& b) = default;

  LocalScalar det() const;
  LocalScalar trace() const { return (*this)(0, 0) + (*this)(1, 1); }
  LocalMatrix adjugate() const;
  LocalMatrix at_eta(const Rational& value) const;
  LocalMatrix u_limit() const;
  bool is_zero() const;
  bool has_eta() const;
  bool has_negative_z() const;

 private:
  std::array<LocalScalar, 4> e_;
};

/// Row-major 2x2 of entry strings.
std::array<std::array<std::string, 2>, 2> to_strings(const LocalMatrix& m);

struct GaugeFactors {
  LocalMatrix g1;  // [[1, z^-m (η-1)], [0, z^-m]]
  LocalMatrix g2;  // [[z^m, 0], [1-η, 1]]
};
/// Throws InvalidMultiplicity unless m >= 1.
GaugeFactors gauge_factors(int m);

/// The product g2·g1 in the closed form [[z^m, η-1], [1-η, z^-m (1-(1-η)^2)]].
LocalMatrix displayed_product(int m);
/// [[z^m, 1], [-1, 0]], the stated restriction of g2·g1 to η = 0.
LocalMatrix displayed_slice(int m);

struct SmoothnessReport {
  int m = 0;
  LocalMatrix product;     // g2·g1
  LocalMatrix eta0_slice;  // near z = 0
  LocalMatrix eta1_slice;  // away from the bump
  LocalScalar det;
  bool det_is_one = false;
  bool eta0_holomorphic = false;   // no negative z powers at η = 0
  bool eta1_is_hecke = false;      // diag(z^m, z^-m) at η = 1
  bool matches_displayed_product = false;
  bool matches_displayed_slice = false;
};
/// Throws SmoothnessFailure if det(g2 g1) != 1 or the η = 0 slice has a pole.
SmoothnessReport product_smoothness(int m);

LocalMatrix higgs_symbol();  // [[0, φ], [0, 0]]
/// (g2 g1) Φ (g2 g1)^-1 with the inverse taken as the adjugate (det = 1).
LocalMatrix conjugated_higgs(int m);
/// [[(η-1) z^m φ, z^2m φ], [-(1-η)^2 φ, (1-η) z^m φ]]
LocalMatrix displayed_conjugate(int m);

struct FlowLimit {
  LocalMatrix flowed;                        // u^2 diag(u^-1, u) C diag(u, u^-1)
  std::array<std::array<int, 2>, 2> u_exponents{};
  LocalMatrix limit;
  int vanishing_order = 0;                   // z-order of the (1,2) entry of the limit
};
FlowLimit flow_limit(int m);

/// Independent flow limits at each point; returns the z-order of each limit.
std::vector<int> multi_point_limit(std::span<const int> multiplicities);

struct TrivializationCheck {
  LocalMatrix meromorphic_step;  // diag(1, z^-m) [[0, ∂̄η z^-m], [0, 0]] diag(1, z^m)
  LocalMatrix smooth_step;       // h A h^-1 - (∂̄h) h^-1 with h = [[1, η-1], [0, 1]]
  bool meromorphic_exact = false;
  bool smooth_trivial = false;
};
TrivializationCheck hecke_trivialization(int m);

}  // namespace secantflow::local
