#include "secantflow/rational.hpp"

#include <cctype>

#include "secantflow/error.hpp"

namespace secantflow {

namespace {

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view numerator = text;
  std::string_view denominator = "1";
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    numerator = text.substr(0, slash);
    denominator = text.substr(slash + 1);
  }
  if (!is_integer_literal(numerator) || !is_integer_literal(denominator) ||
      denominator.front() == '-' || denominator.front() == '+')
    throw Error(Errc::MalformedInput, "not a rational literal: \"" + std::string(text) + "\"");
  if (numerator.front() == '+') numerator.remove_prefix(1);

  mpz_class num(std::string(numerator), 10);
  mpz_class den(std::string(denominator), 10);
  if (den == 0) throw Error(Errc::MalformedInput, "zero denominator in \"" + std::string(text) + "\"");
  Rational value(num, den);
  value.canonicalize();
  return value;
}

std::string to_string(const Rational& value) { return value.get_str(10); }

}  // namespace secantflow
