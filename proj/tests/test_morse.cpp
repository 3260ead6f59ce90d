#include "doctest.h"
#include "secantflow/curve.hpp"
#include "secantflow/error.hpp"
#include "secantflow/morse.hpp"

using namespace secantflow;

namespace {

std::vector<int> levels(const ModuliParams& p) {
  std::vector<int> out;
  for (const auto& c : critical_range(p).nonminimal) out.push_back(c.d);
  return out;
}

/// Brute force over a wide window of integers.
std::vector<int> levels_by_scan(const ModuliParams& p) {
  std::vector<int> out;
  for (int d = -50; d <= 50; ++d)
    if (2 * d > p.degE && 2 * d <= p.degE + p.degM) out.push_back(d);
  return out;
}

}  // namespace

TEST_CASE("critical ranges") {
  CHECK(levels({2, 1, 2}) == std::vector<int>{1});
  CHECK(levels({2, 1, 6}) == std::vector<int>{1, 2, 3});
  CHECK(levels({2, 0, 2}) == std::vector<int>{1});
  CHECK(levels({2, 0, 1}).empty());
  for (int degE = -5; degE <= 5; ++degE)
    for (int degM = 1; degM <= 9; ++degM) CHECK(levels({3, degE, degM}) == levels_by_scan({3, degE, degM}));
  CHECK(critical_range({2, 1, 6}).coprime);
  CHECK_FALSE(critical_range({2, 0, 6}).coprime);
  CHECK_THROWS_AS(critical_range({1, 0, 2}), Error);
  CHECK_THROWS_AS(critical_range({2, 0, 0}), Error);
}

TEST_CASE("morse indices and fibre dimensions") {
  CHECK(morse_index({2, 1, 6}, 1) == 4);
  CHECK(morse_index({2, 0, 2}, 1) == 6);
  CHECK(morse_index({3, 1, 4}, 2) == 10);
  CHECK(unstable_fibre_dim({2, 1, 6}, 1) == 2);
  CHECK(unstable_fibre_dim({2, 0, 2}, 1) == 3);
  CHECK_THROWS_AS(morse_index({2, 1, 2}, 2), Error);
  for (int g : {2, 3, 4})
    for (int degE : {-1, 0, 1, 2})
      for (int degM = 1; degM <= 8; ++degM) {
        ModuliParams p{g, degE, degM};
        int previous = 0;
        for (const auto& c : critical_range(p).nonminimal) {
          CHECK(c.index_real % 2 == 0);
          CHECK(c.index_real > previous);
          CHECK(c.index_real == 2 * unstable_fibre_dim(p, c.d));
          CHECK(c.f_rank_order == 2 * c.d - degE);
          previous = c.index_real;
          ModuliParams fixed = p;
          fixed.fixed_determinant = true;
          CHECK(c.dim_cplx - critical_dim(fixed, c.d) == g);
          CHECK(morse_index(fixed, c.d) == c.index_real);
        }
      }
}

TEST_CASE("fibre dimension matches h1 of a representative") {
  for (auto f : {std::vector<Rational>{4, 4, 0, 0, 0, 1}, std::vector<Rational>{1, 1, 0, 0, 0, 0, 0, 1}}) {
    auto curve = make_curve(f);
    ModuliParams p{curve.genus(), 1, 7};
    for (const auto& c : critical_range(p).nonminimal) {
      int deg = p.degE - 2 * c.d;  // deg L1* L2
      CHECK(unstable_fibre_dim(p, c.d) == static_cast<int>(h1_dim(curve, Divisor::at_infinity(deg))));
    }
  }
}

TEST_CASE("stratum codimension") {
  ModuliParams p{2, 1, 6};
  CHECK(stratum_codim(p, 1, 3) == 4);
  CHECK(stratum_codim(p, 1, 3) == morse_index(p, 1));
  CHECK(stratum_codim({2, 0, 4}, 1, 2) == 6);
  CHECK(stratum_codim({2, 0, 4}, 1, 2) == morse_index({2, 0, 4}, 1));
  CHECK(stratum_codim(p, 1, 2) == stratum_codim(p, 1, 3));
  CHECK_THROWS_AS(stratum_codim(p, 2, 2), Error);
  CHECK_THROWS_AS(stratum_codim(p, 0, 2), Error);
}

TEST_CASE("stratification posets") {
  auto poset = strat_poset({2, 1, 6}, 3);
  CHECK(poset.strata == std::vector<int>{0, 1, 2});
  CHECK(poset.covers == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});
  CHECK(poset.in_closure(0, 2));
  CHECK(poset.in_closure(1, 2));
  CHECK_FALSE(poset.in_closure(2, 1));
  CHECK(strat_poset({2, 1, 6}, 1).strata == std::vector<int>{0});
  CHECK_THROWS_AS(strat_poset({2, 1, 6}, 4), Error);
  auto wide = strat_poset({3, 0, 8}, 4);
  CHECK(wide.strata == std::vector<int>{0, 1, 2, 3});
  for (int a : wide.strata)
    for (int b : wide.strata) CHECK(wide.in_closure(a, b) == (a < b));
}

TEST_CASE("smale check") {
  auto r = smale_check({2, 1, 6});
  CHECK(r.rows.size() == 3);
  CHECK(r.all_pass());
  CHECK(smale_check({3, 0, 4}).all_pass());
  CHECK(smale_check({2, 1, 2}).rows.empty());
  CHECK(smale_check({2, 1, 2}).all_pass());
}
