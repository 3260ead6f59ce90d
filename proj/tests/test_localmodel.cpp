#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "secantflow/error.hpp"
#include "secantflow/localmodel.hpp"

using namespace secantflow;
using namespace secantflow::local;

namespace {

struct Point {
  Rational z, eta, u, phi;
};

Rational power(const Rational& x, int k) {
  Rational out = 1;
  for (int i = 0; i < std::abs(k); ++i) out *= x;
  return k < 0 ? Rational(1 / out) : out;
}

Rational eval(const LocalScalar& s, const Point& p) {
  Rational out = 0;
  for (const auto& [mono, c] : s.terms()) {
    if (mono.deta) continue;
    out += c * power(p.z, mono.z) * power(p.eta, mono.eta) * power(p.u, mono.u) * power(p.phi, mono.phi);
  }
  return out;
}

using Num = std::array<std::array<Rational, 2>, 2>;

Num eval(const LocalMatrix& m, const Point& p) {
  Num out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out[i][j] = eval(m(i, j), p);
  return out;
}

Num mul(const Num& a, const Num& b) {
  Num out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  return out;
}

std::vector<Point> sample_points(int count) {
  std::mt19937 rng(11);
  auto r = [&] { return oracle::frac(static_cast<long>(rng() % 19) + 1, static_cast<long>(rng() % 7) + 1); };
  std::vector<Point> out;
  for (int i = 0; i < count; ++i) out.push_back({r(), r(), r(), r()});
  return out;
}

}  // namespace

TEST_CASE("scalar arithmetic") {
  LocalScalar a = LocalScalar::z(2) * LocalScalar::eta() - LocalScalar::phi();
  CHECK((a - a).is_zero());
  CHECK((LocalScalar::deta() * LocalScalar::deta()).is_zero());
  CHECK(a.at_eta(0) == -LocalScalar::phi());
  CHECK((LocalScalar::z(-3) * LocalScalar::z(3)) == LocalScalar(1));
  CHECK(LocalScalar::z(4) * LocalScalar::phi() == LocalScalar::term(1, {.z = 4, .phi = 1}));
  CHECK((LocalScalar::z(4) * LocalScalar::phi()).to_string() == "z^4*phi");
  CHECK((LocalScalar(Rational(-2, 3)) * LocalScalar::z(-1) + LocalScalar(1)).to_string() == "-2/3*z^-1 + 1");
  CHECK_THROWS_AS(LocalScalar::u(-1), Error);
  CHECK((LocalScalar::u(2) + LocalScalar::eta()).u_limit() == LocalScalar::eta());
}

TEST_CASE("gauge factors") {
  for (int m = 1; m <= 8; ++m) {
    auto g = gauge_factors(m);
    CHECK(g.g1.det() == LocalScalar::z(-m));
    CHECK(g.g2.det() == LocalScalar::z(m));
    CHECK(g.g1(0, 1) == LocalScalar::z(-m) * (LocalScalar::eta() - LocalScalar(1)));
    auto prod = g.g2 * g.g1;
    CHECK(prod(1, 1) == LocalScalar::z(-m) * (LocalScalar(1) - (LocalScalar(1) - LocalScalar::eta()).pow(2)));
    for (const auto& p : sample_points(5)) CHECK(eval(prod, p) == mul(eval(g.g2, p), eval(g.g1, p)));
  }
  CHECK_THROWS_AS(gauge_factors(0), Error);
}

TEST_CASE("smoothness of the product") {
  for (int m = 1; m <= 8; ++m) {
    auto r = product_smoothness(m);
    CHECK(r.det_is_one);
    CHECK(r.eta0_holomorphic);
    CHECK(r.eta1_is_hecke);
    CHECK(r.matches_displayed_product);
    // The literal factors give [[z^m, -1], [1, 0]] on η = 0, the transpose-sign
    // variant of the stated [[z^m, 1], [-1, 0]]; both are holomorphic and unimodular.
    CHECK(r.eta0_slice == LocalMatrix{LocalScalar::z(m), -1, 1, 0});
    CHECK_FALSE(r.matches_displayed_slice);
    CHECK(displayed_slice(m).det() == LocalScalar(1));
  }
}

TEST_CASE("conjugated Higgs field") {
  for (int m = 1; m <= 6; ++m) {
    auto c = conjugated_higgs(m);
    CHECK(c == displayed_conjugate(m));
    CHECK(c(0, 1) == LocalScalar::z(2 * m) * LocalScalar::phi());
    CHECK(c.trace().is_zero());
    CHECK((c * c).is_zero());
    CHECK(c.at_eta(1) == LocalMatrix{0, LocalScalar::z(2 * m) * LocalScalar::phi(), 0, 0});
    auto g = gauge_factors(m);
    auto prod = g.g2 * g.g1;
    for (const auto& p : sample_points(4)) {
      Num gp = eval(prod, p);
      Num inv{{{gp[1][1], -gp[0][1]}, {-gp[1][0], gp[0][0]}}};
      CHECK(eval(c, p) == mul(mul(gp, eval(higgs_symbol(), p)), inv));
    }
  }
}

TEST_CASE("flow limit") {
  for (int m = 1; m <= 8; ++m) {
    auto f = flow_limit(m);
    CHECK(f.u_exponents == std::array<std::array<int, 2>, 2>{{{2, 0}, {4, 2}}});
    CHECK(f.limit == LocalMatrix{0, LocalScalar::z(2 * m) * LocalScalar::phi(), 0, 0});
    CHECK(f.vanishing_order == 2 * m);
    CHECK_FALSE(f.limit.has_eta());
    CHECK(f.flowed(1, 0).u_order() == 4);
    // e^{-2t} scaling checked numerically against the diagonal conjugation.
    for (const auto& p : sample_points(3)) {
      Num c = eval(conjugated_higgs(m), p);
      Num left{{{1 / p.u, 0}, {0, p.u}}}, right{{{p.u, 0}, {0, 1 / p.u}}};
      Num expect = mul(mul(left, c), right);
      Num got = eval(f.flowed, p);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(got[i][j] == p.u * p.u * expect[i][j]);
    }
  }
  CHECK(to_strings(flow_limit(2).limit)[0][1] == "z^4*phi");
}

TEST_CASE("multi-point limits") {
  CHECK(multi_point_limit(std::vector<int>{1, 1}) == std::vector<int>{2, 2});
  CHECK(multi_point_limit(std::vector<int>{3}) == std::vector<int>{6});
  CHECK(multi_point_limit(std::vector<int>{}).empty());
}

TEST_CASE("trivialization identities") {
  for (int m = 1; m <= 4; ++m) {
    auto t = hecke_trivialization(m);
    CHECK(t.meromorphic_exact);
    CHECK(t.smooth_trivial);
  }
}
