#pragma once

// Broken flow lines between critical points of the rank-2 energy function and
// the matching chains of secant points.
//
// A critical point at level d is (L1, L2, M, φ) with deg L1 = d and φ a function
// whose divisor satisfies div(φ) + M - L1 + L2 >= 0, i.e. a section of L1* L2 M.
// A flow line leaving it is an extension class on the secant plane of a witness
// divisor D; the flow ends at (L1 - D, L2 + D, φ), whose section has gained 2D.

#include <span>
#include <vector>

#include "secantflow/curve.hpp"
#include "secantflow/morse.hpp"
#include "secantflow/secant.hpp"

namespace secantflow {

struct CriticalPointData {
  Divisor L1;
  Divisor L2;
  Divisor M;
  RationalFunction phi;
  int d = 0;

  int degE() const { return L1.degree() + L2.degree(); }
  int degM() const { return M.degree(); }
  BundlePair pair() const { return {L1.degree(), L2.degree(), M.degree(), L1, L2, M}; }
  /// M - L1 + L2: the section is φ viewed in L(section_divisor_bound).
  Divisor section_bound() const { return M - L1 + L2; }
  friend bool operator==(const CriticalPointData&, const CriticalPointData&) = default;
};

/// Throws InvalidCriticalPoint unless d = deg L1, deg L1 > deg L2, φ != 0 and the
/// section is holomorphic.
void validate_critical_point(const HyperellipticCurve& curve, const CriticalPointData& cp);

/// Order of vanishing of the section φ at an affine non-Weierstrass point.
int section_order(const HyperellipticCurve& curve, const CriticalPointData& cp, const CurvePoint& p);

struct FlowLinePoint {
  DualClass cls;
  Divisor witness;
  Rational phase;  // turns of the circle action, in [0, 1)
};

/// Phaseless image of a flow line: a point of a nondegenerate secant stratum.
struct SecantPoint {
  DualClass cls;
  Divisor witness;
  friend bool operator==(const SecantPoint&, const SecantPoint&) = default;
};

struct ChainStep {
  FlowLinePoint point;
  CriticalPointData lower;
};

struct ChainRecord {
  CriticalPointData top;
  std::vector<ChainStep> steps;
};

struct SecantChain {
  CriticalPointData top;
  std::vector<SecantPoint> points;
  friend bool operator==(const SecantChain&, const SecantChain&) = default;
};

/// Lower limit of the flow line x leaving top. Throws BudgetViolation unless
/// 0 < 2 deg D < d1 - d2, WitnessNotMinimal unless x.cls lies on the plane of D
/// and on no smaller plane supported in supp D.
CriticalPointData downward_limit(const HyperellipticCurve& curve, const CriticalPointData& top, const FlowLinePoint& x);

struct UpwardTarget {
  Divisor divisor;
  int target_d = 0;
};
/// Pool divisors D with 2D <= div0(φ), 0 < deg D and 2(ℓ + deg D) < degE + degM.
std::vector<UpwardTarget> upward_targets(const HyperellipticCurve& curve, const CriticalPointData& bottom,
                                         const ModuliParams& params, std::span<const CurvePoint> pool);

/// A class on the plane of D whose least pool witness is exactly D, chosen by
/// trying fixed coefficient patterns on the jet columns. Throws WitnessNotMinimal
/// if none qualifies.
DualClass canonical_class(const SecantEmbedding& emb, const Divisor& d, std::span<const CurvePoint> pool);

/// All chains from top down to level ℓ with witnesses from the pool, phases 0.
std::vector<ChainRecord> enumerate_chains(const HyperellipticCurve& curve, const CriticalPointData& top, int ell,
                                          std::span<const CurvePoint> pool);

SecantPoint g_map(const FlowLinePoint& x);
SecantChain G_map(const ChainRecord& chain);
FlowLinePoint P_morse(const ChainRecord& chain);
SecantPoint P_sec(const SecantChain& chain);

struct DiagramReport {
  std::size_t chains = 0;
  std::size_t phase_variants = 0;
  std::size_t commute_failures = 0;
  std::size_t witness_failures = 0;
  std::size_t limit_failures = 0;
  std::size_t fibre_failures = 0;
  std::size_t g_fibre_failures = 0;
  std::size_t degree_failures = 0;
  std::size_t closure_failures = 0;
  std::size_t first_steps = 0;
  bool pass() const {
    return commute_failures + witness_failures + limit_failures + fibre_failures + g_fibre_failures + degree_failures + closure_failures == 0;
  }
};

DiagramReport commuting_check(const HyperellipticCurve& curve, const CriticalPointData& top, int ell,
                              std::span<const CurvePoint> pool);

}  // namespace secantflow
