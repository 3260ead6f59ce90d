#include "secantflow/morse.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "secantflow/error.hpp"

namespace secantflow {

namespace {

void require_level(const ModuliParams& params, int d, const char* what) {
  if (!params.in_range(d))
    throw Error(Errc::OutOfRange, std::string(what) + " = " + std::to_string(d) + " is not in degE/2 < d <= (degE + degM)/2 for degE = " +
                                      std::to_string(params.degE) + ", degM = " + std::to_string(params.degM));
}

}  // namespace

void ModuliParams::validate() const {
  if (g < 2) throw Error(Errc::InvalidParams, "genus " + std::to_string(g) + " < 2");
  if (degM <= 0) throw Error(Errc::InvalidParams, "deg M = " + std::to_string(degM) + " must be positive");
}

CriticalSets critical_range(const ModuliParams& params) {
  params.validate();
  CriticalSets out;
  out.coprime = params.coprime();
  int first = params.degE / 2 - 1;
  while (2 * first <= params.degE) ++first;
  for (int d = first; params.in_range(d); ++d)
    out.nonminimal.push_back({d, morse_index(params, d), critical_dim(params, d), 2 * d - params.degE});
  return out;
}

int morse_index(const ModuliParams& params, int d) {
  params.validate();
  require_level(params, d, "d");
  return 2 * params.g - 2 + 2 * (2 * d - params.degE);
}

int unstable_fibre_dim(const ModuliParams& params, int d) {
  params.validate();
  require_level(params, d, "d");
  return params.g - 1 + (2 * d - params.degE);
}

int critical_dim(const ModuliParams& params, int d) {
  params.validate();
  require_level(params, d, "d");
  return (params.degE - 2 * d + params.degM) + (params.fixed_determinant ? 0 : params.g);
}

CodimCount stratum_codim_counts(const ModuliParams& params, int ell, int u) {
  params.validate();
  require_level(params, u, "u");
  require_level(params, ell, "ell");
  if (ell >= u) throw Error(Errc::OutOfRange, "need ell < u, got " + std::to_string(ell) + " >= " + std::to_string(u));
  int ambient = unstable_fibre_dim(params, u) - 1;  // P H^1(L1* L2) over a point of C_u
  int secant = 2 * (u - ell) - 1;                   // Sec_{u-ell}
  return {2 * (ambient - secant), 2 * (params.g - 1 - params.degE + 2 * ell)};
}

int stratum_codim(const ModuliParams& params, int ell, int u) {
  CodimCount c = stratum_codim_counts(params, ell, u);
  if (c.fibrewise != c.closed_form)
    throw std::logic_error("codimension counts disagree: " + std::to_string(c.fibrewise) + " vs " + std::to_string(c.closed_form));
  return c.closed_form;
}

bool StratPoset::in_closure(int ell, int m) const {
  return std::find(closure_order.begin(), closure_order.end(), std::make_pair(ell, m)) != closure_order.end();
}

StratPoset strat_poset(const ModuliParams& params, int u) {
  params.validate();
  require_level(params, u, "u");
  StratPoset out;
  out.u = u;
  out.strata.push_back(0);
  for (int ell = 1; ell < u; ++ell)
    if (2 * ell > params.degE) out.strata.push_back(ell);
  for (std::size_t i = 0; i < out.strata.size(); ++i) {
    if (i + 1 < out.strata.size()) out.covers.emplace_back(out.strata[i], out.strata[i + 1]);
    for (std::size_t j = i + 1; j < out.strata.size(); ++j) out.closure_order.emplace_back(out.strata[i], out.strata[j]);
  }
  return out;
}

bool SmaleReport::all_pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const SmaleRow& r) { return r.pass; });
}

SmaleReport smale_check(const ModuliParams& params) {
  SmaleReport report;
  auto sets = critical_range(params).nonminimal;
  for (const auto& lower : sets)
    for (const auto& upper : sets) {
      if (lower.d >= upper.d) continue;
      CodimCount c = stratum_codim_counts(params, lower.d, upper.d);
      int index = morse_index(params, lower.d);
      report.rows.push_back({lower.d, upper.d, c.closed_form, index, c.fibrewise == c.closed_form && c.closed_form == index});
    }
  return report;
}

}  // namespace secantflow
