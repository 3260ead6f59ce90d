#include "secantflow/curve.hpp"

#include <algorithm>
#include <sstream>

#include "secantflow/error.hpp"
#include "secantflow/linalg.hpp"

namespace secantflow {

// ---------------------------------------------------------------------------
// Points and divisors

CurvePoint CurvePoint::affine(Rational x, Rational y) {
  CurvePoint p;
  p.kind_ = Kind::Affine;
  p.x_ = std::move(x);
  p.y_ = std::move(y);
  p.x_.canonicalize();
  p.y_.canonicalize();
  return p;
}

std::strong_ordering operator<=>(const CurvePoint& a, const CurvePoint& b) {
  if (a.kind_ != b.kind_) return a.is_infinity() ? std::strong_ordering::less : std::strong_ordering::greater;
  if (a.is_infinity()) return std::strong_ordering::equal;
  if (int c = cmp(a.x_, b.x_); c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  if (int c = cmp(a.y_, b.y_); c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string to_string(const CurvePoint& p) {
  if (p.is_infinity()) return "inf";
  return "(" + to_string(p.x()) + ", " + to_string(p.y()) + ")";
}

Divisor Divisor::point(const CurvePoint& p, int multiplicity) {
  Divisor d;
  d.add(p, multiplicity);
  return d;
}

Divisor Divisor::at_infinity(int multiplicity) { return point(CurvePoint::infinity(), multiplicity); }

int Divisor::degree() const {
  int total = 0;
  for (const auto& [p, m] : terms_) total += m;
  return total;
}

bool Divisor::is_effective() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second >= 0; });
}

int Divisor::multiplicity(const CurvePoint& p) const {
  auto it = terms_.find(p);
  return it == terms_.end() ? 0 : it->second;
}

std::vector<CurvePoint> Divisor::support() const {
  std::vector<CurvePoint> out;
  out.reserve(terms_.size());
  for (const auto& [p, m] : terms_) out.push_back(p);
  return out;
}

Divisor Divisor::positive_part() const {
  Divisor out;
  for (const auto& [p, m] : terms_)
    if (m > 0) out.terms_.emplace(p, m);
  return out;
}

Divisor Divisor::negative_part() const {
  Divisor out;
  for (const auto& [p, m] : terms_)
    if (m < 0) out.terms_.emplace(p, -m);
  return out;
}

Divisor& Divisor::add(const CurvePoint& p, int multiplicity) {
  if (multiplicity == 0) return *this;
  int& slot = terms_[p];
  slot += multiplicity;
  if (slot == 0) terms_.erase(p);
  return *this;
}

Divisor& Divisor::operator+=(const Divisor& rhs) {
  for (const auto& [p, m] : rhs.terms_) add(p, m);
  return *this;
}

Divisor& Divisor::operator-=(const Divisor& rhs) {
  for (const auto& [p, m] : rhs.terms_) add(p, -m);
  return *this;
}

Divisor operator*(int k, const Divisor& d) {
  Divisor out;
  if (k == 0) return out;
  for (const auto& [p, m] : d.terms_) out.terms_.emplace(p, k * m);
  return out;
}

bool leq(const Divisor& a, const Divisor& b) { return (b - a).is_effective(); }

Divisor gcd(const Divisor& a, const Divisor& b) {
  Divisor out;
  for (const auto& [p, m] : a.terms()) out.add(p, std::min(m, b.multiplicity(p)));
  for (const auto& [p, m] : b.terms())
    if (a.multiplicity(p) == 0) out.add(p, std::min(0, m));
  return out;
}

Divisor lcm(const Divisor& a, const Divisor& b) {
  Divisor out;
  for (const auto& [p, m] : a.terms()) out.add(p, std::max(m, b.multiplicity(p)));
  for (const auto& [p, m] : b.terms())
    if (a.multiplicity(p) == 0) out.add(p, std::max(0, m));
  return out;
}

std::string to_string(const Divisor& d) {
  if (d.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [p, m] : d.terms()) {
    if (!first) os << (m < 0 ? " - " : " + ");
    else if (m < 0) os << "-";
    first = false;
    int mag = std::abs(m);
    if (mag != 1) os << mag << "*";
    os << to_string(p);
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Curve

HyperellipticCurve HyperellipticCurve::make(std::vector<Rational> f_coeffs) {
  Polynomial f(std::move(f_coeffs));
  if (f.is_zero() || f.degree() % 2 == 0)
    throw Error(Errc::EvenDegree, "deg f = " + std::to_string(f.degree()) + " must be odd");
  if (f.degree() < 5)
    throw Error(Errc::GenusTooSmall, "deg f = " + std::to_string(f.degree()) + " gives genus < 2");
  if (gcd(f, f.derivative()).degree() > 0)
    throw Error(Errc::NonSquarefree, "gcd(f, f') is nonconstant for f = " + f.to_string());
  return HyperellipticCurve(std::move(f), (f.degree() - 1) / 2);
}

bool HyperellipticCurve::on_curve(const CurvePoint& p) const {
  return p.is_infinity() || p.y() * p.y() == f_.evaluate(p.x());
}

bool HyperellipticCurve::is_weierstrass(const CurvePoint& p) const { return p.is_infinity() || is_zero(p.y()); }

CurvePoint HyperellipticCurve::point(const Rational& x, const Rational& y) const {
  CurvePoint p = CurvePoint::affine(x, y);
  if (!on_curve(p)) throw Error(Errc::InvalidPoint, to_string(p) + " is not on y^2 = " + f_.to_string());
  return p;
}

CurvePoint HyperellipticCurve::conjugate(const CurvePoint& p) const {
  if (p.is_infinity()) return p;
  return CurvePoint::affine(p.x(), -p.y());
}

PowerSeries HyperellipticCurve::y_expansion(const CurvePoint& p, std::size_t precision) const {
  if (is_weierstrass(p)) throw Error(Errc::WeierstrassPoint, "no unramified chart at " + to_string(p));
  PowerSeries local_f = PowerSeries::from_polynomial(f_.shifted(p.x()), precision);
  return sqrt_lift(local_f, p.y(), precision);
}

// ---------------------------------------------------------------------------
// Rational functions

RationalFunction::RationalFunction(Polynomial a, Polynomial b, Polynomial den)
    : a_(std::move(a)), b_(std::move(b)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
  if (is_zero()) {
    den_ = Polynomial::constant(1);
    return;
  }
  Polynomial common = gcd(gcd(a_, b_), den_);
  if (common.degree() > 0) {
    a_ = divmod(a_, common).first;
    b_ = divmod(b_, common).first;
    den_ = divmod(den_, common).first;
  }
  Rational lead_inv = 1 / den_.leading();
  a_ *= lead_inv;
  b_ *= lead_inv;
  den_ *= lead_inv;
}

RationalFunction RationalFunction::constant(const Rational& c) {
  return {Polynomial::constant(c), {}, Polynomial::constant(1)};
}
RationalFunction RationalFunction::x() { return {Polynomial::monomial(1), {}, Polynomial::constant(1)}; }
RationalFunction RationalFunction::y() { return {{}, Polynomial::constant(1), Polynomial::constant(1)}; }

RationalFunction& RationalFunction::operator*=(const Rational& c) {
  *this = RationalFunction(a_ * c, b_ * c, den_);
  return *this;
}

RationalFunction operator+(const RationalFunction& h, const RationalFunction& k) {
  return {h.a_ * k.den_ + k.a_ * h.den_, h.b_ * k.den_ + k.b_ * h.den_, h.den_ * k.den_};
}

RationalFunction operator-(const RationalFunction& h, const RationalFunction& k) { return h + k * Rational(-1); }

RationalFunction multiply(const HyperellipticCurve& curve, const RationalFunction& h, const RationalFunction& k) {
  return {h.a() * k.a() + h.b() * k.b() * curve.f(), h.a() * k.b() + h.b() * k.a(), h.den() * k.den()};
}

bool same_function(const RationalFunction& h, const RationalFunction& k) { return (h - k).is_zero(); }

std::string RationalFunction::to_string() const {
  if (is_zero()) return "0";
  std::string numerator;
  if (!a_.is_zero()) numerator = a_.to_string();
  if (!b_.is_zero()) {
    std::string ypart = b_ == Polynomial::constant(1) ? "y" : "(" + b_.to_string() + ")*y";
    numerator = numerator.empty() ? ypart : numerator + " + " + ypart;
  }
  if (den_ == Polynomial::constant(1)) return numerator;
  return "(" + numerator + ")/(" + den_.to_string() + ")";
}

// ---------------------------------------------------------------------------
// Local expansions

namespace {

/// deg N(a + b y) = deg(a^2 - b^2 f) bounds the order of vanishing of a + b y
/// at any affine point.
int norm_degree(const HyperellipticCurve& curve, const RationalFunction& h) {
  return (h.a() * h.a() - h.b() * h.b() * curve.f()).degree();
}

void require_affine_chart(const HyperellipticCurve& curve, const CurvePoint& p) {
  if (curve.is_weierstrass(p)) throw Error(Errc::WeierstrassPoint, "no local coordinate x - x0 at " + to_string(p));
  if (!curve.on_curve(p)) throw Error(Errc::InvalidPoint, to_string(p) + " is not on the curve");
}

}  // namespace

LocalChart::LocalChart(const HyperellipticCurve& curve, const CurvePoint& p, std::size_t precision)
    : curve_(&curve), point_(p), precision_(std::max<std::size_t>(precision, 1)) {
  require_affine_chart(curve, p);
  y_ = curve.y_expansion(p, precision_);
}

PowerSeries LocalChart::numerator_series(const RationalFunction& h, std::size_t precision) const {
  PowerSeries y = precision <= precision_ ? y_.truncated(precision) : curve_->y_expansion(point_, precision);
  PowerSeries a = PowerSeries::from_polynomial(h.a().shifted(point_.x()), precision);
  PowerSeries b = PowerSeries::from_polynomial(h.b().shifted(point_.x()), precision);
  return a + b * y;
}

LaurentExpansion LocalChart::laurent(const RationalFunction& h, std::size_t count) const {
  if (h.is_zero()) throw Error(Errc::ZeroSection, "zero function has no Laurent expansion");
  std::size_t bound = static_cast<std::size_t>(norm_degree(*curve_, h));
  PowerSeries num = numerator_series(h, bound + count + 1);
  auto vn = num.valuation();
  if (!vn || *vn > bound) throw std::logic_error("numerator order exceeds its norm bound");

  int e = h.den().root_multiplicity(point_.x());
  PowerSeries den = PowerSeries::from_polynomial(h.den().shifted(point_.x()), static_cast<std::size_t>(e) + count);
  PowerSeries unit_num = num.shifted_down(*vn).truncated(count);
  PowerSeries unit_den = den.shifted_down(static_cast<std::size_t>(e)).truncated(count);
  PowerSeries quotient = unit_num * inverse(unit_den, count);

  LaurentExpansion out;
  out.valuation = static_cast<int>(*vn) - e;
  out.coefficients = quotient.coeffs();
  return out;
}

std::vector<Rational> LocalChart::coefficients_from(const RationalFunction& h, int start, std::size_t count) const {
  std::vector<Rational> out(count);
  if (h.is_zero() || count == 0) return out;
  int v = laurent(h, 1).valuation;
  if (v < start)
    throw Error(Errc::PoleAtPoint, h.to_string() + " has order " + std::to_string(v) + " < " + std::to_string(start) +
                                       " at " + to_string(point_));
  int top = start + static_cast<int>(count);  // exclusive
  if (v >= top) return out;
  LaurentExpansion l = laurent(h, static_cast<std::size_t>(top - v));
  for (int k = v; k < top; ++k) out[static_cast<std::size_t>(k - start)] = l.coefficients[static_cast<std::size_t>(k - v)];
  return out;
}

// ---------------------------------------------------------------------------
// Riemann-Roch spaces

void check_admissible_support(const HyperellipticCurve& curve, const Divisor& d) {
  for (const auto& [p, m] : d.terms()) {
    if (p.is_infinity()) continue;
    if (!curve.on_curve(p)) throw Error(Errc::InvalidPoint, to_string(p) + " is not on the curve");
    if (curve.is_weierstrass(p))
      throw Error(Errc::UnsupportedSupport, "Weierstrass point " + to_string(p) + " in divisor support");
  }
}

namespace {

struct Monomial {
  bool has_y;
  int power;  // of x
};

/// Monomials x^i, x^j·y of L(n·∞), ordered by pole order at ∞.
std::vector<Monomial> pole_basis(int genus, int n) {
  std::vector<Monomial> out;
  for (int order = 0; order <= n; ++order) {
    if (order % 2 == 0) out.push_back({false, order / 2});
    else if (order >= 2 * genus + 1) out.push_back({true, (order - 2 * genus - 1) / 2});
  }
  return out;
}

RationalFunction monomial_function(const Monomial& mono) {
  Polynomial xp = Polynomial::monomial(mono.power);
  return mono.has_y ? RationalFunction({}, xp, Polynomial::constant(1)) : RationalFunction::polynomial(xp);
}

}  // namespace

SectionSpace riemann_roch_space(const HyperellipticCurve& curve, const Divisor& d) {
  check_admissible_support(curve, d);
  SectionSpace space{d, {}};
  if (d.degree() < 0) return space;

  // Clear the affine poles with q(x) = Π (x - c)^{e_c}, e_c the largest pole order over c.
  std::map<Rational, std::pair<int, Rational>> fibres;  // x -> (e_c, some y over c)
  for (const auto& [p, m] : d.terms()) {
    if (p.is_infinity()) continue;
    auto [it, inserted] = fibres.try_emplace(p.x(), 0, p.y());
    it->second.first = std::max(it->second.first, m);
  }
  Polynomial q = Polynomial::constant(1);
  for (const auto& [c, fibre] : fibres) q = q * Polynomial::linear(c).pow(fibre.first);

  // h ∈ L(D)  <=>  F = q h ∈ L(n·∞) with ord_P F >= e_c - D(P) at each point over c.
  int n = d.infinity_multiplicity() + 2 * q.degree();
  if (n < 0) return space;
  std::vector<Monomial> monos = pole_basis(curve.genus(), n);

  std::vector<std::vector<Rational>> rows;
  for (const auto& [c, fibre] : fibres) {
    CurvePoint p = CurvePoint::affine(c, fibre.second);
    for (const CurvePoint& pt : {p, curve.conjugate(p)}) {
      int required = fibre.first - d.multiplicity(pt);
      if (required <= 0) continue;
      LocalChart chart(curve, pt, static_cast<std::size_t>(required));
      std::vector<std::vector<Rational>> jets;
      for (const auto& mono : monos)
        jets.push_back(chart.coefficients_from(monomial_function(mono), 0, static_cast<std::size_t>(required)));
      for (int k = 0; k < required; ++k) {
        std::vector<Rational> row(monos.size());
        for (std::size_t j = 0; j < monos.size(); ++j) row[j] = jets[j][static_cast<std::size_t>(k)];
        rows.push_back(std::move(row));
      }
    }
  }

  Matrix conditions(rows.size(), monos.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < monos.size(); ++c) conditions(r, c) = rows[r][c];
  Matrix solutions = kernel(conditions);

  for (std::size_t k = 0; k < solutions.cols(); ++k) {
    std::vector<Rational> a_coeffs, b_coeffs;
    for (std::size_t j = 0; j < monos.size(); ++j) {
      const Rational& c = solutions(j, k);
      if (is_zero(c)) continue;
      auto& target = monos[j].has_y ? b_coeffs : a_coeffs;
      auto idx = static_cast<std::size_t>(monos[j].power);
      if (target.size() <= idx) target.resize(idx + 1);
      target[idx] = c;
    }
    space.basis.emplace_back(Polynomial(std::move(a_coeffs)), Polynomial(std::move(b_coeffs)), q);
  }
  return space;
}

std::size_t h0_dim(const HyperellipticCurve& curve, const Divisor& d) { return riemann_roch_space(curve, d).dim(); }

std::size_t h1_dim(const HyperellipticCurve& curve, const Divisor& d) {
  check_admissible_support(curve, d);
  return h0_dim(curve, curve.canonical() - d);
}

// ---------------------------------------------------------------------------
// Orders and jets

int valuation(const HyperellipticCurve& curve, const RationalFunction& h, const CurvePoint& p) {
  if (h.is_zero()) throw Error(Errc::ZeroSection, "valuation of the zero function");
  if (p.is_infinity()) {
    int pole = -1;
    if (!h.a().is_zero()) pole = std::max(pole, 2 * h.a().degree());
    if (!h.b().is_zero()) pole = std::max(pole, 2 * h.b().degree() + 2 * curve.genus() + 1);
    return 2 * h.den().degree() - pole;
  }
  LocalChart chart(curve, p, 1);
  return chart.laurent(h, 1).valuation;
}

JetVector jet(const HyperellipticCurve& curve, const RationalFunction& h, const CurvePoint& p, std::size_t order) {
  if (curve.is_weierstrass(p)) throw Error(Errc::WeierstrassPoint, "jets are only taken at non-Weierstrass points");
  LocalChart chart(curve, p, order + 1);
  return {p, order, chart.coefficients_from(h, 0, order + 1)};
}

std::size_t vanishing_order(const HyperellipticCurve& curve, const RationalFunction& h, const CurvePoint& p) {
  int v = valuation(curve, h, p);
  if (v < 0) throw Error(Errc::PoleAtPoint, h.to_string() + " has a pole at " + to_string(p));
  return static_cast<std::size_t>(v);
}

bool satisfies_divisor_bound(const HyperellipticCurve& curve, const RationalFunction& h, const Divisor& d) {
  if (h.is_zero()) return true;
  if (valuation(curve, h, CurvePoint::infinity()) + d.infinity_multiplicity() < 0) return false;

  std::map<Rational, Rational> fibres;  // x -> some y
  for (const auto& [p, m] : d.terms())
    if (!p.is_infinity()) fibres.try_emplace(p.x(), p.y());

  Polynomial rest = h.den();
  for (const auto& [c, y0] : fibres) rest = divmod(rest, Polynomial::linear(c).pow(rest.root_multiplicity(c))).first;
  if (rest.degree() > 0) return false;

  for (const auto& [c, y0] : fibres) {
    CurvePoint p = CurvePoint::affine(c, y0);
    for (const CurvePoint& pt : {p, curve.conjugate(p)})
      if (valuation(curve, h, pt) + d.multiplicity(pt) < 0) return false;
  }
  return true;
}

std::size_t function_rank(const std::vector<RationalFunction>& fs) {
  if (fs.empty()) return 0;
  Polynomial common = Polynomial::constant(1);
  for (const auto& h : fs) common = divmod(common * h.den(), gcd(common, h.den())).first;
  std::vector<std::pair<Polynomial, Polynomial>> numerators;
  int width = 0;
  for (const auto& h : fs) {
    Polynomial scale = divmod(common, h.den()).first;
    numerators.emplace_back(h.a() * scale, h.b() * scale);
    width = std::max({width, numerators.back().first.degree() + 1, numerators.back().second.degree() + 1});
  }
  Matrix m(fs.size(), 2 * static_cast<std::size_t>(width));
  for (std::size_t i = 0; i < fs.size(); ++i)
    for (int k = 0; k < width; ++k) {
      m(i, static_cast<std::size_t>(k)) = numerators[i].first.coeff(k);
      m(i, static_cast<std::size_t>(width + k)) = numerators[i].second.coeff(k);
    }
  return rank(m);
}

}  // namespace secantflow
