#include "secantflow/secant.hpp"

#include <algorithm>

#include "secantflow/error.hpp"

namespace secantflow {

BundlePair BundlePair::at_infinity(int d1, int d2, int m) {
  return {d1, d2, m, Divisor::at_infinity(d1), Divisor::at_infinity(d2), Divisor::at_infinity(m)};
}

void BundlePair::validate() const {
  if (d1 <= d2) throw Error(Errc::InvalidBundlePair, "need deg L1 > deg L2, got " + std::to_string(d1) + " <= " + std::to_string(d2));
  if (d1 > d2 + m)
    throw Error(Errc::InvalidBundlePair, "need deg L1 <= deg L2 + deg M, got " + std::to_string(d1) + " > " +
                                             std::to_string(d2) + " + " + std::to_string(m));
  if (L1.degree() != d1 || L2.degree() != d2 || M.degree() != m)
    throw Error(Errc::InvalidBundlePair, "representative degrees do not match (d1, d2, m)");
}

DualClass::DualClass(std::vector<Rational> coords) : coords_(std::move(coords)) {
  if (std::all_of(coords_.begin(), coords_.end(), [](const Rational& c) { return is_zero(c); }))
    throw Error(Errc::ZeroClass, "extension class must be nonzero");
}

DualClass DualClass::normalized() const {
  auto lead = std::find_if(coords_.begin(), coords_.end(), [](const Rational& c) { return !is_zero(c); });
  Rational inv = 1 / *lead;
  std::vector<Rational> out = coords_;
  for (auto& c : out) c *= inv;
  return DualClass(std::move(out));
}

bool operator==(const DualClass& a, const DualClass& b) {
  return a.size() == b.size() && a.normalized().coords_ == b.normalized().coords_;
}

std::string to_string(const DualClass& e) {
  std::string out = "[";
  for (std::size_t i = 0; i < e.size(); ++i) out += (i ? ", " : "") + to_string(e.coords()[i]);
  return out + "]";
}

std::vector<Divisor> effective_divisors(std::span<const CurvePoint> pool, int degree) {
  std::vector<Divisor> out;
  if (degree < 0) return out;
  if (degree == 0) return {Divisor()};
  if (pool.empty()) return out;
  std::vector<std::size_t> idx(static_cast<std::size_t>(degree), 0);
  while (true) {
    Divisor d;
    for (auto i : idx) d.add(pool[i], 1);
    out.push_back(std::move(d));
    // Next nondecreasing sequence.
    std::size_t k = idx.size();
    while (k > 0 && idx[k - 1] + 1 == pool.size()) --k;
    if (k == 0) break;
    ++idx[k - 1];
    for (std::size_t j = k; j < idx.size(); ++j) idx[j] = idx[k - 1];
  }
  return out;
}

SecantEmbedding::SecantEmbedding(const HyperellipticCurve& curve, BundlePair pair)
    : curve_(&curve), pair_(std::move(pair)) {
  pair_.validate();
  twist_ = pair_.twist(curve);
  try {
    sections_ = riemann_roch_space(curve, twist_);
  } catch (const Error& e) {
    if (e.code() == Errc::UnsupportedSupport) throw Error(Errc::InadmissibleSupport, e.detail());
    throw;
  }
}

void SecantEmbedding::check_witness(const Divisor& d) const {
  if (!d.is_effective() || d.degree() < 1)
    throw Error(Errc::InadmissibleSupport, "witness must be effective of degree >= 1: " + to_string(d));
  for (const auto& [p, m] : d.terms()) {
    if (p.is_infinity() || !curve_->on_curve(p) || curve_->is_weierstrass(p))
      throw Error(Errc::InadmissibleSupport, "witness point " + to_string(p) + " is not an affine non-Weierstrass point");
  }
}

Matrix SecantEmbedding::jet_columns(const CurvePoint& p, int order) const {
  check_witness(Divisor::point(p));
  int start = -twist_.multiplicity(p);
  LocalChart chart(*curve_, p, static_cast<std::size_t>(std::max(order, 1)));
  Matrix out(ambient_dim(), static_cast<std::size_t>(order));
  for (std::size_t i = 0; i < ambient_dim(); ++i) {
    std::vector<Rational> coeffs;
    try {
      coeffs = chart.coefficients_from(sections_.basis[i], start, static_cast<std::size_t>(order));
    } catch (const Error& e) {
      if (e.code() != Errc::PoleAtPoint) throw;
      throw Error(Errc::BasisPoleCollision,
                  "basis function " + sections_.basis[i].to_string() + " is not regular in the frame at " + to_string(p));
    }
    for (std::size_t k = 0; k < coeffs.size(); ++k) out(i, k) = coeffs[k];
  }
  return out;
}

Matrix SecantEmbedding::embedding_matrix(const Divisor& d) const {
  check_witness(d);
  Matrix out(ambient_dim(), 0);
  for (const auto& [p, m] : d.terms()) out = out.hstack(jet_columns(p, m));
  return out;
}

DualClass SecantEmbedding::image(const CurvePoint& p) const { return DualClass(jet_columns(p, 1).column(0)); }

SecantPlane SecantEmbedding::secant_plane(const Divisor& d) const {
  Matrix span = embedding_matrix(d);
  std::size_t r = rank(span);
  int n = d.degree();
  if (r < static_cast<std::size_t>(n))
    throw Error(Errc::DegenerateRank, "rank " + std::to_string(r) + " < deg D = " + std::to_string(n) + " for D = " +
                                          to_string(d) + (n >= pair_.gap() ? " (outside deg D < d1 - d2)" : ""));
  if (n >= pair_.gap())
    throw Error(Errc::BoundViolation, "deg D = " + std::to_string(n) + " >= d1 - d2 = " + std::to_string(pair_.gap()));
  return {d, std::move(span)};
}

std::optional<SecantPlane> SecantEmbedding::plane_intersection(const SecantPlane& a, const SecantPlane& b) const {
  Matrix common = column_space_intersection(a.span, b.span);
  if (common.cols() == 0) return std::nullopt;
  return SecantPlane{gcd(a.witness, b.witness), std::move(common)};
}

bool plane_membership(const DualClass& e, const SecantPlane& plane) {
  if (e.size() != plane.span.rows())
    throw Error(Errc::DimensionMismatch, "class has " + std::to_string(e.size()) + " coordinates, plane lives in dimension " +
                                             std::to_string(plane.span.rows()));
  return in_column_span(plane.span, e.coords());
}

std::optional<StratumHit> SecantEmbedding::stratum_membership(const DualClass& e, std::span<const CurvePoint> pool,
                                                              int max_n) const {
  if (max_n >= pair_.gap())
    throw Error(Errc::BoundViolation, "maxN = " + std::to_string(max_n) + " must be < d1 - d2 = " + std::to_string(pair_.gap()));
  if (e.size() != ambient_dim())
    throw Error(Errc::DimensionMismatch, "class has " + std::to_string(e.size()) + " coordinates, ambient dimension is " +
                                             std::to_string(ambient_dim()));
  if (max_n < 1) return std::nullopt;

  // Jets of every pool point up to the largest order any witness can need.
  std::vector<Matrix> columns;
  columns.reserve(pool.size());
  for (const auto& p : pool) columns.push_back(jet_columns(p, max_n));

  Matrix target(ambient_dim(), 1);
  for (std::size_t i = 0; i < ambient_dim(); ++i) target(i, 0) = e.coords()[i];

  for (int n = 1; n <= max_n; ++n) {
    std::optional<StratumHit> hit;
    for (const Divisor& d : effective_divisors(pool, n)) {
      Matrix span(ambient_dim(), 0);
      for (const auto& [p, m] : d.terms()) {
        std::size_t idx = static_cast<std::size_t>(std::find(pool.begin(), pool.end(), p) - pool.begin());
        std::vector<std::size_t> cols(static_cast<std::size_t>(m));
        for (std::size_t k = 0; k < cols.size(); ++k) cols[k] = k;
        span = span.hstack(columns[idx].select_columns(cols));
      }
      if (rank(span.hstack(target)) != rank(span)) continue;
      if (!hit) hit = StratumHit{n, d, 0};
      ++hit->witness_count;
    }
    if (hit) return hit;
  }
  return std::nullopt;
}

}  // namespace secantflow
