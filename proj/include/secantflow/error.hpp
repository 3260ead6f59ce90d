#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace secantflow {

enum class Errc {
  // curve
  NonSquarefree,
  EvenDegree,
  GenusTooSmall,
  InvalidPoint,
  UnsupportedSupport,
  PoleAtPoint,
  WeierstrassPoint,
  ZeroSection,
  // secant
  InvalidBundlePair,
  InadmissibleSupport,
  BasisPoleCollision,
  DegenerateRank,
  DimensionMismatch,
  BoundViolation,
  ZeroClass,
  // morse
  InvalidParams,
  OutOfRange,
  // localmodel
  InvalidMultiplicity,
  SmoothnessFailure,
  NegativeUExponent,
  // resolution
  BudgetViolation,
  WitnessNotMinimal,
  InvalidCriticalPoint,
  // cli
  MalformedInput,
  UnknownSubcommand,
};

std::string_view to_string(Errc code);

/// Name of the module that owns the invariant behind `code`.
std::string_view owning_module(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail);

  Errc code() const noexcept { return code_; }
  std::string_view module() const noexcept { return owning_module(code_); }
  const std::string& detail() const noexcept { return detail_; }

 private:
  Errc code_;
  std::string detail_;
};

}  // namespace secantflow
