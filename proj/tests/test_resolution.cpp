#include <algorithm>
#include <map>

#include "doctest.h"
#include "oracles.hpp"
#include "secantflow/error.hpp"
#include "secantflow/resolution.hpp"

using namespace secantflow;

namespace {

HyperellipticCurve genus2() { return make_curve({4, 4, 0, 0, 0, 1}); }

std::vector<CurvePoint> pool6() { return oracle::small_points(genus2(), 9); }

const ModuliParams params{2, 1, 8, false};

/// Critical point at level d with representatives at ∞ and degE = 1, degM = 8.
CriticalPointData at_level(int d, RationalFunction phi = RationalFunction::constant(1)) {
  return {Divisor::at_infinity(d), Divisor::at_infinity(1 - d), Divisor::at_infinity(8), std::move(phi), d};
}

/// Order of a polynomial in x at an affine non-Weierstrass point: x - x0 is a local coordinate there.
int poly_order(const std::vector<Rational>& coeffs, const Rational& x0) {
  std::vector<Rational> c = coeffs;
  int order = 0;
  while (!c.empty()) {
    Rational v = 0, power = 1;
    for (const auto& a : c) {
      v += a * power;
      power *= x0;
    }
    if (v != 0) return order;
    std::vector<Rational> q(c.size() - 1);  // synthetic division by x - x0
    Rational carry = 0;
    for (std::size_t k = c.size() - 1; k >= 1; --k) {
      carry = c[k] + carry * x0;
      q[k - 1] = carry;
    }
    c = q;
    ++order;
  }
  return order;
}

/// Number of pool chains: sum over compositions of the budget of prod C(p + k - 1, k).
long chain_count(long p, int budget) {
  if (budget == 0) return 1;
  long total = 0;
  for (int k = 1; k <= budget; ++k) total += oracle::binomial(static_cast<unsigned long>(p + k - 1), static_cast<unsigned long>(k)).get_si() * chain_count(p, budget - k);
  return total;
}

Errc error_code(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::MalformedInput;
}

bool on_span(const Matrix& span, const DualClass& e) {
  Matrix v = Matrix::from_columns({e.coords()}, e.size());
  return oracle::bareiss_rank(span.hstack(v)) == oracle::bareiss_rank(span);
}

}  // namespace

TEST_CASE("chain count oracle") {
  CHECK(chain_count(6, 1) == 6);
  CHECK(chain_count(6, 2) == 21 + 36);
  CHECK(chain_count(6, 3) == 56 + 126 + 126 + 216);
}

TEST_CASE("critical point validation") {
  auto c = genus2();
  CHECK_NOTHROW(validate_critical_point(c, at_level(4)));
  auto bad = at_level(4);
  bad.d = 3;
  CHECK(error_code([&] { validate_critical_point(c, bad); }) == Errc::InvalidCriticalPoint);
  // M - L1 + L2 = ∞ has only constants.
  CHECK(error_code([&] { validate_critical_point(c, at_level(4, RationalFunction::x())); }) == Errc::InvalidCriticalPoint);
  CHECK(error_code([&] { validate_critical_point(c, at_level(4, RationalFunction::constant(0))); }) == Errc::InvalidCriticalPoint);
}

TEST_CASE("canonical classes are minimally witnessed") {
  auto c = genus2();
  auto pool = pool6();
  SecantEmbedding emb(c, at_level(4).pair());
  for (int n = 1; n <= 3; ++n) {
    auto divisors = effective_divisors(pool, n);
    if (n == 3) divisors.resize(8);
    for (const auto& d : divisors) {
      DualClass e = canonical_class(emb, d, pool);
      CHECK(on_span(emb.embedding_matrix(d), e));
      // Not on the plane of any other pool divisor of degree <= deg D.
      for (int k = 1; k <= n; ++k)
        for (const auto& mult : oracle::multisets(pool.size(), k)) {
          Divisor other;
          for (std::size_t i = 0; i < pool.size(); ++i) other.add(pool[i], mult[i]);
          if (other == d) continue;
          CHECK_FALSE(on_span(emb.embedding_matrix(other), e));
        }
    }
  }
}

TEST_CASE("downward limit gains twice the witness") {
  auto c = genus2();
  auto pool = pool6();
  // φ = x on M - L1 + L2 = 3∞ at level 3.
  std::vector<Rational> phi_coeffs{0, 1};
  auto top = at_level(3, RationalFunction::polynomial(Polynomial(phi_coeffs)));
  SecantEmbedding emb(c, top.pair());
  for (const auto& p : pool) CHECK(section_order(c, top, p) == poly_order(phi_coeffs, p.x()));

  for (int n = 1; n <= 2; ++n)
    for (const auto& d : effective_divisors(pool, n)) {
      FlowLinePoint x{canonical_class(emb, d, pool), d, Rational(1, 4)};
      auto lower = downward_limit(c, top, x);
      CHECK(lower.d == 3 - n);
      CHECK(lower.L1 == top.L1 - d);
      CHECK(lower.L2 == top.L2 + d);
      CHECK(lower.phi == top.phi);
      for (const auto& p : pool) CHECK(section_order(c, lower, p) == poly_order(phi_coeffs, p.x()) + 2 * d.multiplicity(p));
    }
}

TEST_CASE("downward limit rejects bad flow lines") {
  auto c = genus2();
  auto pool = pool6();
  auto top = at_level(4);
  SecantEmbedding emb(c, top.pair());
  auto p = pool[0], q = pool[2];
  DualClass image_p = emb.image(p);
  CHECK(error_code([&] { downward_limit(c, top, {image_p, Divisor(), 0}); }) == Errc::BudgetViolation);
  Divisor big = Divisor::point(p, 2) + Divisor::point(q, 2);  // 2·4 >= 7
  CHECK(error_code([&] { downward_limit(c, top, {image_p, big, 0}); }) == Errc::BudgetViolation);
  // e = image of p lies on the plane of p + q but is already witnessed by p.
  CHECK(error_code([&] { downward_limit(c, top, {image_p, Divisor::point(p) + Divisor::point(q), 0}); }) == Errc::WitnessNotMinimal);
  CHECK(error_code([&] { downward_limit(c, top, {emb.image(q), Divisor::point(p), 0}); }) == Errc::WitnessNotMinimal);
}

TEST_CASE("upward targets match brute force") {
  auto c = genus2();
  auto pool = pool6();
  // φ = x^2 (x - 1) on 7∞ at level 1: double zeros over x = 0, simple over x = 1.
  std::vector<Rational> phi_coeffs{0, 0, -1, 1};
  auto bottom = at_level(1, RationalFunction::polynomial(Polynomial(phi_coeffs)));
  auto targets = upward_targets(c, bottom, params, pool);

  std::vector<Divisor> expected;
  for (int k = 1; 2 * (1 + k) < 9; ++k)
    for (const auto& mult : oracle::multisets(pool.size(), k)) {
      bool ok = true;
      Divisor d;
      for (std::size_t i = 0; i < pool.size(); ++i) {
        ok = ok && 2 * mult[i] <= poly_order(phi_coeffs, pool[i].x());
        d.add(pool[i], mult[i]);
      }
      if (ok) expected.push_back(d);
    }
  REQUIRE(targets.size() == expected.size());
  CHECK(targets.size() == 3);
  for (const auto& t : targets) {
    CHECK(std::find(expected.begin(), expected.end(), t.divisor) != expected.end());
    CHECK(t.target_d == 1 + t.divisor.degree());
  }
}

TEST_CASE("downward then upward recovers the witness") {
  auto c = genus2();
  auto pool = pool6();
  auto top = at_level(4);
  SecantEmbedding emb(c, top.pair());
  for (int n = 1; n <= 3; ++n)
    for (const auto& d : effective_divisors(pool, n)) {
      auto lower = downward_limit(c, top, {canonical_class(emb, d, pool), d, 0});
      auto targets = upward_targets(c, lower, params, pool);
      bool found = false;
      for (const auto& t : targets) found = found || (t.divisor == d && t.target_d == 4);
      CHECK(found);
      // Every target is a sub-divisor of D within the degree bound 2(l + k) < 9.
      for (const auto& t : targets) {
        CHECK(leq(t.divisor, d));
        CHECK(2 * t.target_d < 9);
      }
    }
}

TEST_CASE("chain enumeration") {
  auto c = genus2();
  auto pool = pool6();
  auto top = at_level(4);
  CHECK(enumerate_chains(c, top, 3, pool).size() == 6);
  auto chains = enumerate_chains(c, top, 2, pool);
  CHECK(static_cast<long>(chains.size()) == chain_count(6, 2));
  std::size_t unbroken = 0, broken = 0;
  for (const auto& ch : chains) {
    if (ch.steps.size() == 1) {
      ++unbroken;
      CHECK(ch.steps[0].point.witness.degree() == 2);
    } else {
      ++broken;
      REQUIRE(ch.steps.size() == 2);
      CHECK(ch.steps[0].lower.d == 3);
      CHECK(ch.steps[1].lower.d == 2);
    }
    CHECK(ch.steps.back().lower.d == 2);
  }
  CHECK(unbroken == 21);
  CHECK(broken == 36);

  CHECK(error_code([&] { enumerate_chains(c, top, 4, pool); }) == Errc::BudgetViolation);
  CHECK(error_code([&] { enumerate_chains(c, top, 0, pool); }) == Errc::BudgetViolation);
}

TEST_CASE("flow and secant projections commute") {
  auto c = genus2();
  auto all = pool6();
  std::vector<CurvePoint> pool(all.begin(), all.begin() + 4);
  auto top = at_level(4);
  auto chains = enumerate_chains(c, top, 2, pool);
  REQUIRE(static_cast<long>(chains.size()) == chain_count(4, 2));
  for (auto chain : chains) {
    CHECK(P_sec(G_map(chain)) == g_map(P_morse(chain)));
    auto image = G_map(chain);
    chain.steps[0].point.phase = Rational(2, 3);
    CHECK(G_map(chain) == image);
    CHECK(P_morse(chain).phase == Rational(2, 3));
  }
  auto report = commuting_check(c, top, 2, pool);
  CHECK(report.chains == chains.size());
  CHECK(report.first_steps == 4 + 10);
  CHECK(report.phase_variants == 3 * chains.size());
  CHECK(report.pass());
}

TEST_CASE("fibres over a first flow line") {
  auto c = genus2();
  auto all = pool6();
  std::vector<CurvePoint> pool(all.begin(), all.begin() + 3);
  auto top = at_level(4);
  auto chains = enumerate_chains(c, top, 1, pool);
  CHECK(static_cast<long>(chains.size()) == chain_count(3, 3));
  // Chains whose first witness has degree k continue in chain_count(3, 3 - k) ways.
  std::map<Divisor, long> fibre;
  for (const auto& ch : chains) ++fibre[ch.steps[0].point.witness];
  for (const auto& [d, count] : fibre) CHECK(count == chain_count(3, 3 - d.degree()));
}
