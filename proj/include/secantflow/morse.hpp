#pragma once

// Critical sets, Morse indices and the unstable-set stratification for rank-2
// twisted Higgs bundles of degree degE, twisted by M of degree degM > 0.

#include <utility>
#include <vector>

namespace secantflow {

struct ModuliParams {
  int g = 2;
  int degE = 0;
  int degM = 1;
  bool fixed_determinant = false;

  /// Throws InvalidParams unless g >= 2 and degM > 0.
  void validate() const;
  bool coprime() const { return degE % 2 != 0; }
  /// degE/2 < d <= (degE + degM)/2
  bool in_range(int d) const { return 2 * d > degE && 2 * d <= degE + degM; }
};

struct CriticalSet {
  int d = 0;             // deg L1
  int index_real = 0;
  int dim_cplx = 0;
  int f_rank_order = 0;  // d1 - d2; orders the critical values
};

/// The minimum is only a marker (level 0); its dimension is not reported.
struct CriticalSets {
  bool coprime = false;
  std::vector<CriticalSet> nonminimal;  // increasing d
};

CriticalSets critical_range(const ModuliParams& params);
int morse_index(const ModuliParams& params, int d);
/// Complex dimension of H^1(L1* L2) at level d.
int unstable_fibre_dim(const ModuliParams& params, int d);
int critical_dim(const ModuliParams& params, int d);

struct CodimCount {
  int fibrewise = 0;    // ambient P^{h1-1} minus the secant variety, doubled
  int closed_form = 0;  // 2(g - 1 - degE + 2ℓ)
};
CodimCount stratum_codim_counts(const ModuliParams& params, int ell, int u);
/// Real codimension of the level-ℓ stratum in the unstable set of level u.
int stratum_codim(const ModuliParams& params, int ell, int u);

struct StratPoset {
  int u = 0;
  std::vector<int> strata;                         // 0 (the minimum), then increasing ℓ < u
  std::vector<std::pair<int, int>> closure_order;  // (ℓ, m): closure of ℓ contains m
  std::vector<std::pair<int, int>> covers;         // consecutive strata
  bool in_closure(int ell, int m) const;
};
StratPoset strat_poset(const ModuliParams& params, int u);

struct SmaleRow {
  int ell = 0;
  int u = 0;
  int codim = 0;
  int index = 0;
  bool pass = false;
};
struct SmaleReport {
  std::vector<SmaleRow> rows;
  bool all_pass() const;
};
SmaleReport smale_check(const ModuliParams& params);

}  // namespace secantflow
