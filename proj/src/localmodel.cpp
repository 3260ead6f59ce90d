#include "secantflow/localmodel.hpp"

#include <algorithm>

#include "secantflow/error.hpp"

namespace secantflow::local {

LocalScalar::LocalScalar(const Rational& c) { add_term({}, c); }

LocalScalar LocalScalar::term(const Rational& c, const Monomial& mono) {
  if (mono.u < 0) throw Error(Errc::NegativeUExponent, "u^" + std::to_string(mono.u) + " has no limit as u -> 0");
  LocalScalar out;
  out.add_term(mono, c);
  return out;
}

void LocalScalar::add_term(const Monomial& mono, const Rational& c) {
  if (secantflow::is_zero(c) || mono.deta > 1) return;
  Rational& slot = terms_[mono];
  slot += c;
  if (secantflow::is_zero(slot)) terms_.erase(mono);
}

LocalScalar& LocalScalar::operator+=(const LocalScalar& rhs) {
  for (const auto& [mono, c] : rhs.terms_) add_term(mono, c);
  return *this;
}

LocalScalar& LocalScalar::operator-=(const LocalScalar& rhs) {
  for (const auto& [mono, c] : rhs.terms_) add_term(mono, -c);
  return *this;
}

LocalScalar operator*(const LocalScalar& a, const LocalScalar& b) {
  LocalScalar out;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_)
      out.add_term({ma.z + mb.z, ma.eta + mb.eta, ma.u + mb.u, ma.phi + mb.phi, ma.deta + mb.deta}, ca * cb);
  return out;
}

LocalScalar LocalScalar::pow(int k) const {
  LocalScalar out(1);
  for (int i = 0; i < k; ++i) out = out * *this;
  return out;
}

LocalScalar LocalScalar::at_eta(const Rational& value) const {
  LocalScalar out;
  for (const auto& [key, coeff] : terms_) {
    Monomial mono = key;
    Rational c = coeff;
    for (int i = 0; i < mono.eta; ++i) c *= value;
    mono.eta = 0;
    out.add_term(mono, c);
  }
  return out;
}

LocalScalar LocalScalar::u_limit() const {
  LocalScalar out;
  for (const auto& [mono, c] : terms_) {
    if (mono.u < 0) throw Error(Errc::NegativeUExponent, "term " + LocalScalar::term(1, {mono.z, mono.eta, 0, mono.phi, mono.deta}).to_string() +
                                                              " carries u^" + std::to_string(mono.u));
    if (mono.u == 0) out.add_term(mono, c);
  }
  return out;
}

bool LocalScalar::has_eta() const {
  return std::any_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.first.eta > 0; });
}

bool LocalScalar::has_negative_z() const {
  return std::any_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.first.z < 0; });
}

std::optional<int> LocalScalar::z_order() const {
  std::optional<int> out;
  for (const auto& [mono, c] : terms_) out = out ? std::min(*out, mono.z) : mono.z;
  return out;
}

std::optional<int> LocalScalar::u_order() const {
  std::optional<int> out;
  for (const auto& [mono, c] : terms_) out = out ? std::min(*out, mono.u) : mono.u;
  return out;
}

namespace {

void append_factor(std::string& out, const char* name, int power) {
  if (power == 0) return;
  if (!out.empty()) out += "*";
  out += name;
  if (power != 1) out += "^" + std::to_string(power);
}

}  // namespace

std::string LocalScalar::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [mono, c] : terms_) {
    std::string factors;
    append_factor(factors, "z", mono.z);
    append_factor(factors, "eta", mono.eta);
    append_factor(factors, "u", mono.u);
    append_factor(factors, "phi", mono.phi);
    append_factor(factors, "dbar_eta", mono.deta);
    Rational mag = abs(c);
    std::string body = factors.empty() ? secantflow::to_string(mag)
                       : mag == 1      ? factors
                                       : secantflow::to_string(mag) + "*" + factors;
    if (first) out = (sgn(c) < 0 ? "-" : "") + body;
    else out += (sgn(c) < 0 ? " - " : " + ") + body;
    first = false;
  }
  return out;
}

LocalMatrix operator*(const LocalMatrix& a, const LocalMatrix& b) {
  LocalMatrix out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j);
  return out;
}

LocalMatrix operator-(const LocalMatrix& a, const LocalMatrix& b) {
  LocalMatrix out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out(i, j) = a(i, j) - b(i, j);
  return out;
}

LocalScalar LocalMatrix::det() const { return (*this)(0, 0) * (*this)(1, 1) - (*this)(0, 1) * (*this)(1, 0); }

LocalMatrix LocalMatrix::adjugate() const {
  return {(*this)(1, 1), -(*this)(0, 1), -(*this)(1, 0), (*this)(0, 0)};
}

LocalMatrix LocalMatrix::at_eta(const Rational& value) const {
  LocalMatrix out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out(i, j) = (*this)(i, j).at_eta(value);
  return out;
}

LocalMatrix LocalMatrix::u_limit() const {
  LocalMatrix out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out(i, j) = (*this)(i, j).u_limit();
  return out;
}

bool LocalMatrix::is_zero() const {
  return std::all_of(e_.begin(), e_.end(), [](const LocalScalar& s) { return s.is_zero(); });
}
bool LocalMatrix::has_eta() const {
  return std::any_of(e_.begin(), e_.end(), [](const LocalScalar& s) { return s.has_eta(); });
}
bool LocalMatrix::has_negative_z() const {
  return std::any_of(e_.begin(), e_.end(), [](const LocalScalar& s) { return s.has_negative_z(); });
}

std::array<std::array<std::string, 2>, 2> to_strings(const LocalMatrix& m) {
  return {{{m(0, 0).to_string(), m(0, 1).to_string()}, {m(1, 0).to_string(), m(1, 1).to_string()}}};
}

namespace {

void require_multiplicity(int m) {
  if (m < 1) throw Error(Errc::InvalidMultiplicity, "multiplicity " + std::to_string(m) + " must be >= 1");
}

const LocalScalar one(1);

}  // namespace

GaugeFactors gauge_factors(int m) {
  require_multiplicity(m);
  LocalScalar eta = LocalScalar::eta();
  LocalMatrix g1{one, LocalScalar::z(-m) * (eta - one), 0, LocalScalar::z(-m)};
  LocalMatrix g2{LocalScalar::z(m), 0, one - eta, one};
  return {g1, g2};
}

LocalMatrix displayed_product(int m) {
  require_multiplicity(m);
  LocalScalar eta = LocalScalar::eta();
  return {LocalScalar::z(m), eta - one, one - eta, LocalScalar::z(-m) * (one - (one - eta).pow(2))};
}

LocalMatrix displayed_slice(int m) {
  require_multiplicity(m);
  return {LocalScalar::z(m), one, -one, 0};
}

SmoothnessReport product_smoothness(int m) {
  GaugeFactors g = gauge_factors(m);
  SmoothnessReport r;
  r.m = m;
  r.product = g.g2 * g.g1;
  r.eta0_slice = r.product.at_eta(0);
  r.eta1_slice = r.product.at_eta(1);
  r.det = r.product.det();
  r.det_is_one = r.det == one;
  r.eta0_holomorphic = !r.eta0_slice.has_negative_z();
  r.eta1_is_hecke = r.eta1_slice == LocalMatrix::diagonal(LocalScalar::z(m), LocalScalar::z(-m));
  r.matches_displayed_product = r.product == displayed_product(m);
  r.matches_displayed_slice = r.eta0_slice == displayed_slice(m);
  if (!r.det_is_one) throw Error(Errc::SmoothnessFailure, "det(g2 g1) = " + r.det.to_string() + " for m = " + std::to_string(m));
  if (!r.eta0_holomorphic)
    throw Error(Errc::SmoothnessFailure, "g2 g1 has a pole at z = 0 on the region eta = 0 for m = " + std::to_string(m));
  return r;
}

LocalMatrix higgs_symbol() { return {0, LocalScalar::phi(), 0, 0}; }

LocalMatrix conjugated_higgs(int m) {
  GaugeFactors g = gauge_factors(m);
  LocalMatrix product = g.g2 * g.g1;
  if (product.det() != one) throw Error(Errc::SmoothnessFailure, "g2 g1 is not unimodular for m = " + std::to_string(m));
  return product * higgs_symbol() * product.adjugate();
}

LocalMatrix displayed_conjugate(int m) {
  require_multiplicity(m);
  LocalScalar eta = LocalScalar::eta(), phi = LocalScalar::phi(), zm = LocalScalar::z(m);
  return {(eta - one) * zm * phi, LocalScalar::z(2 * m) * phi, -((one - eta).pow(2)) * phi, (one - eta) * zm * phi};
}

FlowLimit flow_limit(int m) {
  LocalMatrix c = conjugated_higgs(m);
  // φ(t) = e^{-2t} diag(e^t, e^-t) C diag(e^-t, e^t) with u = e^-t.
  const std::array<int, 2> left{-1, 1}, right{1, -1};
  FlowLimit out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      int e = 2 + left[static_cast<std::size_t>(i)] + right[static_cast<std::size_t>(j)];
      out.u_exponents[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = e;
      if (e < 0 && !c(i, j).is_zero())
        throw Error(Errc::NegativeUExponent, "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") scales by u^" + std::to_string(e));
      out.flowed(i, j) = c(i, j) * LocalScalar::u(std::max(e, 0));
    }
  out.limit = out.flowed.u_limit();
  auto order = out.limit(0, 1).z_order();
  out.vanishing_order = order ? *order : -1;
  return out;
}

std::vector<int> multi_point_limit(std::span<const int> multiplicities) {
  std::vector<int> out;
  out.reserve(multiplicities.size());
  for (int m : multiplicities) out.push_back(flow_limit(m).vanishing_order);
  return out;
}

TrivializationCheck hecke_trivialization(int m) {
  require_multiplicity(m);
  LocalScalar eta = LocalScalar::eta(), deta = LocalScalar::deta();
  TrivializationCheck out;
  LocalMatrix form{0, deta * LocalScalar::z(-m), 0, 0};
  out.meromorphic_step = LocalMatrix::diagonal(one, LocalScalar::z(-m)) * form * LocalMatrix::diagonal(one, LocalScalar::z(m));
  LocalMatrix exact{0, deta, 0, 0};
  out.meromorphic_exact = out.meromorphic_step == exact;
  LocalMatrix h{one, eta - one, 0, one};
  LocalMatrix h_inv{one, one - eta, 0, one};
  out.smooth_step = h * exact * h_inv - exact * h_inv;
  out.smooth_trivial = out.smooth_step.is_zero();
  return out;
}

}  // namespace secantflow::local
