#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "secantflow/curve.hpp"
#include "secantflow/error.hpp"

using namespace secantflow;

namespace {

std::vector<Rational> coeffs(std::initializer_list<long> cs) {
  std::vector<Rational> out;
  for (long c : cs) out.emplace_back(c);
  return out;
}

HyperellipticCurve genus2() { return make_curve(coeffs({4, 4, 0, 0, 0, 1})); }  // y^2 = x^5 + 4x + 4
HyperellipticCurve genus3() { return make_curve(coeffs({1, 1, 0, 0, 0, 0, 0, 1})); }

Errc error_code(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::MalformedInput;
}

}  // namespace

TEST_CASE("curve construction validates f") {
  CHECK(make_curve(coeffs({-1, 0, 0, 0, 0, 1})).genus() == 2);
  CHECK(genus3().genus() == 3);
  auto bad = coeffs({0, 1, 0, -2, 0, 1});  // x (x^2 - 1)^2
  CHECK_FALSE(oracle::squarefree(bad));
  CHECK(error_code([&] { make_curve(bad); }) == Errc::NonSquarefree);
  CHECK(error_code([] { make_curve(coeffs({1, 0, 0, 0, 1})); }) == Errc::EvenDegree);
  CHECK(error_code([] { make_curve(coeffs({1, 0, 0, 1})); }) == Errc::GenusTooSmall);
  CHECK(oracle::squarefree(genus2().f().coeffs()));
}

TEST_CASE("point search finds the expected rational points") {
  auto pts = oracle::small_points(genus2(), 9);
  CHECK(pts.size() == 6);
  CHECK(genus2().on_curve(CurvePoint::affine(Rational(9, 4), Rational(269, 32))));
  CHECK(error_code([] { genus2().point(1, 2); }) == Errc::InvalidPoint);
}

TEST_CASE("divisor arithmetic") {
  auto c = genus2();
  CurvePoint p = c.point(0, 2), q = c.point(1, 3);
  Divisor d = Divisor::point(p, 2) + Divisor::point(q) - Divisor::at_infinity(3);
  CHECK(d.degree() == 0);
  CHECK_FALSE(d.is_effective());
  CHECK(d.negative_part() == Divisor::at_infinity(3));
  CHECK((d - d).is_zero());
  Divisor a = Divisor::point(p, 2) + Divisor::point(q);
  Divisor b = Divisor::point(p) + Divisor::point(q, 3);
  CHECK(gcd(a, b) == Divisor::point(p) + Divisor::point(q));
  CHECK(lcm(a, b) == Divisor::point(p, 2) + Divisor::point(q, 3));
  CHECK(leq(gcd(a, b), a));
}

TEST_CASE("function field arithmetic uses y^2 = f") {
  auto c = genus2();
  auto y = RationalFunction::y();
  auto yy = multiply(c, y, y);
  CHECK(yy == RationalFunction::polynomial(c.f()));
  RationalFunction h(Polynomial::linear(1) * Polynomial::linear(2), Polynomial::linear(1), Polynomial::linear(1));
  CHECK(h == RationalFunction(Polynomial::linear(2), Polynomial::constant(1), Polynomial::constant(1)));
  CHECK(same_function(h + RationalFunction::constant(-1), h - RationalFunction::constant(1)));
}

TEST_CASE("y expansion agrees with the recurrence") {
  auto c = genus2();
  for (const auto& p : oracle::small_points(c, 4)) {
    auto series = c.y_expansion(p, 12);
    auto expected = oracle::y_series(c.f().coeffs(), p.x(), p.y(), 12);
    for (std::size_t k = 0; k < 12; ++k) CHECK(series[k] == expected[k]);
  }
}

TEST_CASE("riemann-roch spaces at infinity") {
  auto c = genus2();
  auto zero = riemann_roch_space(c, Divisor());
  REQUIRE(zero.dim() == 1);
  CHECK(zero.basis[0] == RationalFunction::constant(1));

  auto five = riemann_roch_space(c, Divisor::at_infinity(5));
  REQUIRE(five.dim() == 4);
  CHECK(five.basis[0] == RationalFunction::constant(1));
  CHECK(five.basis[1] == RationalFunction::x());
  CHECK(five.basis[2] == RationalFunction::polynomial(Polynomial::monomial(2)));
  CHECK(five.basis[3] == RationalFunction::y());

  auto k = riemann_roch_space(c, c.canonical());
  REQUIRE(k.dim() == 2);
  CHECK(k.basis[1] == RationalFunction::x());
}

TEST_CASE("h1 examples") {
  auto c = genus2();
  CHECK(h1_dim(c, Divisor()) == 2);
  CHECK(h1_dim(c, Divisor::at_infinity(-1)) == 2);
  CHECK(h1_dim(c, Divisor::at_infinity(-3)) == 4);
  CHECK(h1_dim(c, Divisor::point(c.point(0, 2)) - Divisor::at_infinity(4)) == 4);
}

TEST_CASE("support restrictions") {
  auto c = make_curve(coeffs({0, -1, 0, 0, 0, 1}));  // x^5 - x has (0, 0)
  CHECK(error_code([&] { riemann_roch_space(c, Divisor::point(CurvePoint::affine(0, 0))); }) ==
        Errc::UnsupportedSupport);
  CHECK(error_code([&] { jet(c, RationalFunction::x(), CurvePoint::affine(0, 0), 1); }) == Errc::WeierstrassPoint);
}

TEST_CASE("jets and vanishing orders") {
  auto c = genus2();
  CurvePoint p = c.point(0, 2);
  CHECK(jet(c, RationalFunction::constant(1), p, 2).values == std::vector<Rational>{1, 0, 0});
  CHECK(jet(c, RationalFunction::x(), p, 1).values == std::vector<Rational>{0, 1});
  CHECK(jet(c, RationalFunction::y(), p, 1).values == std::vector<Rational>{2, 1});
  CHECK(vanishing_order(c, RationalFunction::x(), p) == 1);
  CHECK(vanishing_order(c, RationalFunction::polynomial(Polynomial::monomial(2)), p) == 2);
  auto cube = RationalFunction::polynomial(Polynomial::monomial(3) * (Polynomial::linear(-1)));
  CHECK(vanishing_order(c, cube, p) == 3);
  // y - 2 vanishes at (0, 2) but not at (0, -2).
  auto ym2 = RationalFunction::y() - RationalFunction::constant(2);
  CHECK(vanishing_order(c, ym2, p) == 1);
  CHECK(vanishing_order(c, ym2, c.conjugate(p)) == 0);
  CHECK(error_code([&] { vanishing_order(c, RationalFunction(), p); }) == Errc::ZeroSection);
  auto pole = RationalFunction(Polynomial::constant(1), {}, Polynomial::linear(0));
  CHECK(error_code([&] { jet(c, pole, p, 1); }) == Errc::PoleAtPoint);
  CHECK(valuation(c, pole, p) == -1);
  CHECK(valuation(c, RationalFunction::y(), CurvePoint::infinity()) == -5);
}

TEST_CASE("jets are linear and match evaluation and the recurrence") {
  auto c = genus3();
  CurvePoint p = c.point(0, 1);
  auto ys = oracle::y_series(c.f().coeffs(), 0, 1, 6);
  CHECK(jet(c, RationalFunction::y(), p, 5).values == ys);
  auto s = RationalFunction(Polynomial::monomial(2), Polynomial::linear(3), Polynomial::linear(5));
  auto t = RationalFunction::y() + RationalFunction::x();
  auto js = jet(c, s, p, 4).values, jt = jet(c, t, p, 4).values;
  auto jc = jet(c, s * Rational(3) + t * Rational(-2, 7), p, 4).values;
  for (std::size_t k = 0; k < 5; ++k) CHECK(jc[k] == 3 * js[k] - Rational(2, 7) * jt[k]);
  CHECK(js[0] == oracle::evaluate(s, p));
}

TEST_CASE("riemann-roch holds on random pool divisors") {
  for (auto c : {genus2(), genus3()}) {
    auto pool = oracle::small_points(c, 4);
    std::mt19937 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
      Divisor d = Divisor::at_infinity(static_cast<int>(rng() % 9) - 4);
      for (const auto& p : pool) d.add(p, static_cast<int>(rng() % 5) - 2);
      int lhs = static_cast<int>(h0_dim(c, d)) - static_cast<int>(h1_dim(c, d));
      CHECK(lhs == d.degree() - c.genus() + 1);
      auto space = riemann_roch_space(c, d);
      for (const auto& h : space.basis) CHECK(satisfies_divisor_bound(c, h, d));
      CHECK(function_rank(space.basis) == space.dim());
      if (d.degree() < 0) CHECK(space.dim() == 0);
      if (d.degree() > 2 * c.genus() - 2) CHECK(h1_dim(c, d) == 0);
    }
  }
}

TEST_CASE("h0 is invariant under adding div(x - c)") {
  auto c = genus2();
  auto pool = oracle::small_points(c, 4);
  // div(x - x0) = P + conj(P) - 2 inf.
  for (const auto& p : pool) {
    Divisor principal = Divisor::point(p) + Divisor::point(c.conjugate(p)) - Divisor::at_infinity(2);
    for (int a = -2; a <= 6; ++a) {
      Divisor d = Divisor::at_infinity(a) + Divisor::point(pool[0]) - Divisor::point(pool[3]);
      if (d.multiplicity(p) != 0 || d.multiplicity(c.conjugate(p)) != 0) continue;
      CHECK(h0_dim(c, d) == h0_dim(c, d + principal));
    }
  }
}
