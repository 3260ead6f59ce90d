#pragma once

// The curve inside P H^1(L1* L2) = P H^0(K + L1 - L2)^*, secant planes spanned by
// jet functionals, and pool-restricted secant strata.
//
// Jets are taken in the local frame of K + L1 - L2: at a point P where that
// divisor has multiplicity t, the k-th jet of a section h is the coefficient of
// z^{k-t} in the Laurent expansion of h. For representatives supported at ∞
// this is the ordinary Taylor jet.

#include <optional>
#include <span>
#include <vector>

#include "secantflow/curve.hpp"
#include "secantflow/linalg.hpp"

namespace secantflow {

struct BundlePair {
  int d1 = 0;
  int d2 = 0;
  int m = 0;
  Divisor L1;
  Divisor L2;
  Divisor M;

  /// Representatives d1·∞, d2·∞, m·∞.
  static BundlePair at_infinity(int d1, int d2, int m);

  /// Throws InvalidBundlePair unless d2 < d1 <= d2 + m and the representatives have
  /// degrees d1, d2, m.
  void validate() const;
  int gap() const { return d1 - d2; }
  /// K + L1 - L2, whose sections are dual to the extension classes.
  Divisor twist(const HyperellipticCurve& curve) const { return curve.canonical() + L1 - L2; }
};

/// Nonzero vector of coordinates in the basis dual to a fixed section basis,
/// compared projectively.
class DualClass {
 public:
  explicit DualClass(std::vector<Rational> coords);

  const std::vector<Rational>& coords() const { return coords_; }
  std::size_t size() const { return coords_.size(); }
  /// Scaled so the first nonzero coordinate is 1.
  DualClass normalized() const;

  friend bool operator==(const DualClass& a, const DualClass& b);

 private:
  std::vector<Rational> coords_;
};

std::string to_string(const DualClass& e);

struct SecantPlane {
  Divisor witness;
  Matrix span;  // n × N, columns are jet functionals
  int projective_dim() const { return static_cast<int>(span.cols()) - 1; }
};

struct StratumHit {
  int degree = 0;
  Divisor witness;  // first hit in lexicographic order
  std::size_t witness_count = 0;
  bool unique() const { return witness_count == 1; }
};

/// Effective divisors of the given degree supported on the pool, as nondecreasing
/// index sequences in lexicographic order.
std::vector<Divisor> effective_divisors(std::span<const CurvePoint> pool, int degree);

class SecantEmbedding {
 public:
  /// Validates the pair and computes the section basis of K + L1 - L2.
  SecantEmbedding(const HyperellipticCurve& curve, BundlePair pair);

  const HyperellipticCurve& curve() const { return *curve_; }
  const BundlePair& pair() const { return pair_; }
  const SectionSpace& sections() const { return sections_; }
  std::size_t ambient_dim() const { return sections_.dim(); }

  /// n × deg D matrix: the block at p_j holds frame jets of orders 0..m_j-1.
  Matrix embedding_matrix(const Divisor& d) const;
  /// Frame jets of orders 0..order-1 at p, one column per order.
  Matrix jet_columns(const CurvePoint& p, int order) const;
  /// Image of a point: the single column of embedding_matrix(p).
  DualClass image(const CurvePoint& p) const;

  /// Requires deg D < d1 - d2 and full rank.
  SecantPlane secant_plane(const Divisor& d) const;
  /// Intersection of the two column spans, labelled by gcd(D1, D2); empty iff the
  /// spans meet only in 0.
  std::optional<SecantPlane> plane_intersection(const SecantPlane& a, const SecantPlane& b) const;

  /// Least N <= max_n with e on the plane of some degree-N pool divisor.
  std::optional<StratumHit> stratum_membership(const DualClass& e, std::span<const CurvePoint> pool, int max_n) const;

 private:
  void check_witness(const Divisor& d) const;
  const HyperellipticCurve* curve_;
  BundlePair pair_;
  Divisor twist_;
  SectionSpace sections_;
};

/// e lies in the column span of the plane.
bool plane_membership(const DualClass& e, const SecantPlane& plane);

}  // namespace secantflow
