#include "secantflow/resolution.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "secantflow/error.hpp"
#include "secantflow/localmodel.hpp"

namespace secantflow {

namespace {

std::string level_string(int d) { return "d = " + std::to_string(d); }

void check_pool(const HyperellipticCurve& curve, std::span<const CurvePoint> pool) {
  Divisor all;
  for (const auto& p : pool) {
    if (p.is_infinity()) throw Error(Errc::UnsupportedSupport, "pool points must be affine");
    all.add(p, 1);
  }
  check_admissible_support(curve, all);
  if (all.terms().size() != pool.size()) throw Error(Errc::MalformedInput, "pool contains a repeated point");
}

// Shared by downward_limit and the chain enumeration, which already holds the
// embedding of the upper critical point.
CriticalPointData descend(const HyperellipticCurve& curve, const SecantEmbedding& emb, const CriticalPointData& top,
                          const FlowLinePoint& x) {
  const Divisor& d = x.witness;
  if (d.is_zero() || !d.is_effective())
    throw Error(Errc::BudgetViolation, "witness " + to_string(d) + " must be effective and nonzero");
  int gap = top.L1.degree() - top.L2.degree();
  if (2 * d.degree() >= gap)
    throw Error(Errc::BudgetViolation, "2 deg D = " + std::to_string(2 * d.degree()) + " must be < d1 - d2 = " + std::to_string(gap));
  if (d.infinity_multiplicity() != 0) throw Error(Errc::UnsupportedSupport, "witness " + to_string(d) + " meets infinity");

  auto support = d.support();
  auto hit = emb.stratum_membership(x.cls, support, d.degree());
  if (!hit || hit->degree != d.degree() || hit->witness != d || !hit->unique())
    throw Error(Errc::WitnessNotMinimal, "class " + to_string(x.cls) + " is not minimally witnessed by " + to_string(d));

  CriticalPointData lower{top.L1 - d, top.L2 + d, top.M, top.phi, top.d - d.degree()};

  std::vector<int> mults;
  for (const auto& [p, m] : d.terms()) mults.push_back(m);
  auto gains = local::multi_point_limit(mults);
  std::size_t i = 0;
  for (const auto& [p, m] : d.terms()) {
    int gain = section_order(curve, lower, p) - section_order(curve, top, p);
    if (gain != gains[i++])
      throw Error(Errc::InvalidCriticalPoint, "section order at " + to_string(p) + " rose by " + std::to_string(gain) +
                                                  ", local model predicts " + std::to_string(gains[i - 1]));
  }
  return lower;
}

bool divisible_by_twice(const HyperellipticCurve& curve, const CriticalPointData& cp, const Divisor& d) {
  for (const auto& [p, m] : d.terms())
    if (section_order(curve, cp, p) < 2 * m) return false;
  return true;
}

std::string chain_key(const std::vector<SecantPoint>& points) {
  std::string out;
  for (const auto& pt : points) out += to_string(pt.witness) + "@" + to_string(pt.cls.normalized()) + "|";
  return out;
}

}  // namespace

void validate_critical_point(const HyperellipticCurve& curve, const CriticalPointData& cp) {
  if (cp.L1.degree() != cp.d)
    throw Error(Errc::InvalidCriticalPoint, "deg L1 = " + std::to_string(cp.L1.degree()) + " but " + level_string(cp.d));
  if (cp.L1.degree() <= cp.L2.degree())
    throw Error(Errc::InvalidCriticalPoint, "deg L1 = " + std::to_string(cp.L1.degree()) + " must exceed deg L2 = " +
                                                std::to_string(cp.L2.degree()));
  if (cp.phi.is_zero()) throw Error(Errc::InvalidCriticalPoint, "phi is zero");
  if (!satisfies_divisor_bound(curve, cp.phi, cp.section_bound()))
    throw Error(Errc::InvalidCriticalPoint, "phi = " + cp.phi.to_string() + " is not a section of M - L1 + L2 = " +
                                                to_string(cp.section_bound()));
}

int section_order(const HyperellipticCurve& curve, const CriticalPointData& cp, const CurvePoint& p) {
  return valuation(curve, cp.phi, p) + cp.section_bound().multiplicity(p);
}

CriticalPointData downward_limit(const HyperellipticCurve& curve, const CriticalPointData& top, const FlowLinePoint& x) {
  validate_critical_point(curve, top);
  SecantEmbedding emb(curve, top.pair());
  return descend(curve, emb, top, x);
}

std::vector<UpwardTarget> upward_targets(const HyperellipticCurve& curve, const CriticalPointData& bottom,
                                         const ModuliParams& params, std::span<const CurvePoint> pool) {
  params.validate();
  validate_critical_point(curve, bottom);
  if (bottom.degE() != params.degE || bottom.degM() != params.degM || curve.genus() != params.g)
    throw Error(Errc::InvalidCriticalPoint, "critical point degrees do not match the moduli parameters");
  check_pool(curve, pool);

  std::vector<UpwardTarget> out;
  Divisor caps;
  for (const auto& p : pool) caps.add(p, section_order(curve, bottom, p) / 2);
  for (int k = 1; 2 * (bottom.d + k) < params.degE + params.degM; ++k)
    for (const Divisor& d : effective_divisors(pool, k))
      if (leq(d, caps)) out.push_back({d, bottom.d + k});
  return out;
}

DualClass canonical_class(const SecantEmbedding& emb, const Divisor& d, std::span<const CurvePoint> pool) {
  Matrix span = emb.embedding_matrix(d);
  std::size_t n = span.cols();
  for (int base = 1; base <= 8; ++base) {
    std::vector<Rational> weights(n);
    Rational w = 1;
    for (auto& x : weights) {
      x = w;
      w *= base;
    }
    auto v = span.apply(weights);
    bool zero = std::all_of(v.begin(), v.end(), [](const Rational& r) { return is_zero(r); });
    if (zero) continue;
    DualClass cls(std::move(v));
    auto hit = emb.stratum_membership(cls, pool, d.degree());
    if (hit && hit->degree == d.degree() && hit->witness == d && hit->unique()) return cls;
  }
  throw Error(Errc::WitnessNotMinimal, "no coefficient pattern isolates " + to_string(d) + " among the pool divisors");
}

std::vector<ChainRecord> enumerate_chains(const HyperellipticCurve& curve, const CriticalPointData& top, int ell,
                                          std::span<const CurvePoint> pool) {
  validate_critical_point(curve, top);
  if (ell >= top.d)
    throw Error(Errc::BudgetViolation, "target level " + std::to_string(ell) + " must lie below " + level_string(top.d));
  if (2 * ell <= top.degE())
    throw Error(Errc::BudgetViolation, "target level " + std::to_string(ell) + " lies outside the critical range (2l > " +
                                           std::to_string(top.degE()) + ")");
  check_pool(curve, pool);

  using Tails = std::vector<std::vector<ChainStep>>;
  std::map<Divisor, Tails> memo;  // keyed by L1; L2 = E - L1 along a chain
  auto rec = [&](auto&& self, const CriticalPointData& cp) -> const Tails& {
    if (auto it = memo.find(cp.L1); it != memo.end()) return it->second;
    Tails tails;
    if (cp.d == ell) {
      tails.emplace_back();
    } else {
      SecantEmbedding emb(curve, cp.pair());
      for (int k = 1; k <= cp.d - ell; ++k)
        for (const Divisor& d : effective_divisors(pool, k)) {
          FlowLinePoint x{canonical_class(emb, d, pool), d, 0};
          CriticalPointData lower = descend(curve, emb, cp, x);
          if (!divisible_by_twice(curve, lower, d)) continue;
          for (const auto& tail : self(self, lower)) {
            std::vector<ChainStep> steps{{x, lower}};
            steps.insert(steps.end(), tail.begin(), tail.end());
            tails.push_back(std::move(steps));
          }
        }
    }
    return memo.emplace(cp.L1, std::move(tails)).first->second;
  };

  std::vector<ChainRecord> out;
  for (const auto& steps : rec(rec, top)) out.push_back({top, steps});
  return out;
}

SecantPoint g_map(const FlowLinePoint& x) { return {x.cls, x.witness}; }

SecantChain G_map(const ChainRecord& chain) {
  SecantChain out{chain.top, {}};
  for (const auto& step : chain.steps) out.points.push_back(g_map(step.point));
  return out;
}

FlowLinePoint P_morse(const ChainRecord& chain) {
  if (chain.steps.empty()) throw Error(Errc::BudgetViolation, "empty chain has no first flow line");
  return chain.steps.front().point;
}

SecantPoint P_sec(const SecantChain& chain) {
  if (chain.points.empty()) throw Error(Errc::BudgetViolation, "empty chain has no first secant point");
  return chain.points.front();
}

DiagramReport commuting_check(const HyperellipticCurve& curve, const CriticalPointData& top, int ell,
                              std::span<const CurvePoint> pool) {
  auto chains = enumerate_chains(curve, top, ell, pool);
  DiagramReport r;
  r.chains = chains.size();

  std::map<Divisor, SecantEmbedding> embeddings;
  auto embedding = [&](const CriticalPointData& cp) -> const SecantEmbedding& {
    auto it = embeddings.find(cp.L1);
    if (it == embeddings.end()) it = embeddings.emplace(cp.L1, SecantEmbedding(curve, cp.pair())).first;
    return it->second;
  };

  const std::vector<Rational> rotations{Rational(1, 3), Rational(1, 2), Rational(5, 7)};
  std::set<std::string> images;
  std::map<std::string, std::pair<CriticalPointData, std::size_t>> by_first;

  for (const auto& chain : chains) {
    int level = top.d;
    const CriticalPointData* parent = &top;
    for (std::size_t i = 0; i < chain.steps.size(); ++i) {
      const auto& step = chain.steps[i];
      const Divisor& d = step.point.witness;
      level -= d.degree();
      bool last = i + 1 == chain.steps.size();
      if (step.lower.d != level || step.lower.L1.degree() != level || (last ? level != ell : level <= ell)) ++r.degree_failures;

      const auto& emb = embedding(*parent);
      auto hit = emb.stratum_membership(step.point.cls, pool, d.degree());
      if (!hit || hit->degree != d.degree() || hit->witness != d || !hit->unique()) ++r.witness_failures;
      if (!(downward_limit(curve, *parent, step.point) == step.lower)) ++r.limit_failures;
      parent = &step.lower;
    }
    if (chain.steps.size() >= 2 && chain.steps.front().point.witness.degree() >= top.d - ell) ++r.closure_failures;

    SecantChain image = G_map(chain);
    if (!(P_sec(image) == g_map(P_morse(chain)))) ++r.commute_failures;
    for (const auto& turn : rotations) {
      ChainRecord rotated = chain;
      for (std::size_t i = 0; i < rotated.steps.size(); ++i) {
        Rational phase = turn * static_cast<long>(i + 1);
        phase -= Rational(mpz_class(phase.get_num() / phase.get_den()));
        rotated.steps[i].point.phase = phase;
      }
      ++r.phase_variants;
      SecantChain rotated_image = G_map(rotated);
      if (!(rotated_image == image) || !(P_sec(rotated_image) == g_map(P_morse(rotated)))) ++r.commute_failures;
    }
    images.insert(chain_key(image.points));

    const auto& first = chain.steps.front();
    std::string key = chain_key({g_map(first.point)});
    auto [it, fresh] = by_first.try_emplace(key, first.lower, 0);
    ++it->second.second;
  }
  r.g_fibre_failures = chains.size() - images.size();

  r.first_steps = by_first.size();
  for (const auto& [key, entry] : by_first) {
    const auto& [lower, count] = entry;
    std::size_t expected = lower.d == ell ? 1 : enumerate_chains(curve, lower, ell, pool).size();
    if (count != expected) ++r.fibre_failures;
  }
  return r;
}

}  // namespace secantflow
