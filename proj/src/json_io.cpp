#include "secantflow/json_io.hpp"

#include <fstream>
#include <sstream>

#include "secantflow/error.hpp"

namespace secantflow::json_io {

namespace {

[[noreturn]] void malformed(const std::string& path, const std::string& what) {
  throw Error(Errc::MalformedInput, path + ": " + what);
}

std::vector<Rational> rational_list(const Json& j, const std::string& path) {
  if (!j.is_array()) malformed(path, "expected an array of rationals");
  std::vector<Rational> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(rational(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

// Rethrows library errors raised while interpreting a field with the field path prepended.
template <class F>
auto at_field(const std::string& path, F&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    if (e.code() == Errc::MalformedInput) throw;
    throw Error(e.code(), path + ": " + e.detail());
  }
}

}  // namespace

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) malformed(path, "cannot open file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return Json::parse(buffer.str());
  } catch (const nlohmann::json::parse_error& e) {
    malformed(path, e.what());
  }
}

Rational rational(const Json& j, const std::string& path) {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const Error& e) {
      malformed(path, e.detail());
    }
  }
  if (j.is_number_integer()) return Rational(j.get<long>());
  malformed(path, "expected a rational string \"p/q\" or an integer");
}

int integer(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) malformed(path, "expected an integer");
  return j.get<int>();
}

const Json& field(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) malformed(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) malformed(path, "missing field \"" + key + "\"");
  return *it;
}

HyperellipticCurve curve(const Json& j, const std::string& path) {
  auto coeffs = rational_list(field(j, "f", path), path + ".f");
  return at_field(path + ".f", [&] { return make_curve(coeffs); });
}

Divisor divisor(const HyperellipticCurve& c, const Json& j, const std::string& path) {
  if (!j.is_object()) malformed(path, "expected an object");
  Divisor out;
  if (j.contains("inf")) out.add(CurvePoint::infinity(), integer(j["inf"], path + ".inf"));
  if (j.contains("affine")) {
    const Json& list = j["affine"];
    if (!list.is_array()) malformed(path + ".affine", "expected an array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      std::string item = path + ".affine[" + std::to_string(i) + "]";
      Rational x = rational(field(list[i], "x", item), item + ".x");
      Rational y = rational(field(list[i], "y", item), item + ".y");
      int mult = list[i].contains("mult") ? integer(list[i]["mult"], item + ".mult") : 1;
      out.add(at_field(item, [&] { return c.point(x, y); }), mult);
    }
  }
  return out;
}

std::vector<CurvePoint> pool(const HyperellipticCurve& c, const Json& j, const std::string& path) {
  const Json& list = field(j, "points", path);
  if (!list.is_array()) malformed(path + ".points", "expected an array");
  std::vector<CurvePoint> out;
  for (std::size_t i = 0; i < list.size(); ++i) {
    std::string item = path + ".points[" + std::to_string(i) + "]";
    Rational x = rational(field(list[i], "x", item), item + ".x");
    Rational y = rational(field(list[i], "y", item), item + ".y");
    auto p = at_field(item, [&] { return c.point(x, y); });
    if (c.is_weierstrass(p)) malformed(item, "Weierstrass points cannot be pool points");
    for (const auto& q : out)
      if (q == p) malformed(item, "repeated pool point");
    out.push_back(p);
  }
  return out;
}

RationalFunction function(const Json& j, const std::string& path) {
  if (!j.is_object()) malformed(path, "expected an object");
  auto poly = [&](const char* key, std::vector<Rational> fallback) {
    return Polynomial(j.contains(key) ? rational_list(j[key], path + "." + key) : std::move(fallback));
  };
  Polynomial den = poly("den", {1});
  if (den.is_zero()) malformed(path + ".den", "zero denominator");
  return RationalFunction(poly("a", {}), poly("b", {}), den);
}

CriticalPointData critical_point(const HyperellipticCurve& c, const Json& j, const std::string& path) {
  CriticalPointData cp{divisor(c, field(j, "L1", path), path + ".L1"), divisor(c, field(j, "L2", path), path + ".L2"),
                       divisor(c, field(j, "M", path), path + ".M"), function(field(j, "phi", path), path + ".phi"), 0};
  cp.d = cp.L1.degree();
  at_field(path, [&] {
    validate_critical_point(c, cp);
    return 0;
  });
  return cp;
}

Json to_json(const Rational& r) { return to_string(r); }

Json to_json(const Polynomial& p) {
  Json out = Json::array();
  for (const auto& c : p.coeffs()) out.push_back(to_string(c));
  return out;
}

Json to_json(const CurvePoint& p) {
  if (p.is_infinity()) return "inf";
  return Json{{"x", to_string(p.x())}, {"y", to_string(p.y())}};
}

Json to_json(const Divisor& d) {
  Json affine = Json::array();
  for (const auto& [p, m] : d.terms())
    if (!p.is_infinity()) affine.push_back(Json{{"x", to_string(p.x())}, {"y", to_string(p.y())}, {"mult", m}});
  return Json{{"inf", d.infinity_multiplicity()}, {"affine", affine}};
}

Json to_json(const RationalFunction& h) {
  return Json{{"a", to_json(h.a())}, {"b", to_json(h.b())}, {"den", to_json(h.den())}, {"text", h.to_string()}};
}

Json to_json(const DualClass& e) {
  Json out = Json::array();
  DualClass n = e.normalized();
  for (const auto& c : n.coords()) out.push_back(to_string(c));
  return out;
}

Json to_json(const Matrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c)));
    out.push_back(row);
  }
  return out;
}

Json to_json(const CriticalPointData& cp) {
  return Json{{"d", cp.d}, {"L1", to_json(cp.L1)}, {"L2", to_json(cp.L2)}, {"M", to_json(cp.M)}, {"phi", to_json(cp.phi)}};
}

Json to_json(const local::LocalMatrix& m) {
  Json out = Json::array();
  for (int i = 0; i < 2; ++i) {
    Json row = Json::array();
    for (int j = 0; j < 2; ++j) {
      if (m(i, j).is_zero()) row.push_back(0);
      else row.push_back(m(i, j).to_string());
    }
    out.push_back(row);
  }
  return out;
}

}  // namespace secantflow::json_io
