#pragma once

// JSON encodings of curves, divisors, point pools, functions and critical points.
// Rationals travel as strings "p/q". Parse failures throw MalformedInput naming
// the offending field path.

#include <json.hpp>

#include <string>
#include <vector>

#include "secantflow/curve.hpp"
#include "secantflow/linalg.hpp"
#include "secantflow/localmodel.hpp"
#include "secantflow/resolution.hpp"
#include "secantflow/secant.hpp"

namespace secantflow::json_io {

using Json = nlohmann::ordered_json;

inline constexpr int schema_version = 1;

/// Reads and parses a file; parse errors carry the file name, line and column.
Json read_file(const std::string& path);

Rational rational(const Json& j, const std::string& path);
int integer(const Json& j, const std::string& path);
const Json& field(const Json& j, const std::string& key, const std::string& path);

HyperellipticCurve curve(const Json& j, const std::string& path = "curve");
Divisor divisor(const HyperellipticCurve& c, const Json& j, const std::string& path = "divisor");
std::vector<CurvePoint> pool(const HyperellipticCurve& c, const Json& j, const std::string& path = "pool");
RationalFunction function(const Json& j, const std::string& path);
/// {"L1", "L2", "M", "phi"}; the level is deg L1.
CriticalPointData critical_point(const HyperellipticCurve& c, const Json& j, const std::string& path = "top");

Json to_json(const Rational& r);
Json to_json(const Polynomial& p);
Json to_json(const CurvePoint& p);
Json to_json(const Divisor& d);
Json to_json(const RationalFunction& h);
Json to_json(const DualClass& e);
Json to_json(const Matrix& m);
Json to_json(const CriticalPointData& cp);
/// Entries as strings, zero entries as the number 0.
Json to_json(const local::LocalMatrix& m);

}  // namespace secantflow::json_io
