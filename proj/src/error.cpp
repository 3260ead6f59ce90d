#include "secantflow/error.hpp"

namespace secantflow {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::NonSquarefree: return "NonSquarefree";
    case Errc::EvenDegree: return "EvenDegree";
    case Errc::GenusTooSmall: return "GenusTooSmall";
    case Errc::InvalidPoint: return "InvalidPoint";
    case Errc::UnsupportedSupport: return "UnsupportedSupport";
    case Errc::PoleAtPoint: return "PoleAtPoint";
    case Errc::WeierstrassPoint: return "WeierstrassPoint";
    case Errc::ZeroSection: return "ZeroSection";
    case Errc::InvalidBundlePair: return "InvalidBundlePair";
    case Errc::InadmissibleSupport: return "InadmissibleSupport";
    case Errc::BasisPoleCollision: return "BasisPoleCollision";
    case Errc::DegenerateRank: return "DegenerateRank";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::BoundViolation: return "BoundViolation";
    case Errc::ZeroClass: return "ZeroClass";
    case Errc::InvalidParams: return "InvalidParams";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::InvalidMultiplicity: return "InvalidMultiplicity";
    case Errc::SmoothnessFailure: return "SmoothnessFailure";
    case Errc::NegativeUExponent: return "NegativeUExponent";
    case Errc::BudgetViolation: return "BudgetViolation";
    case Errc::WitnessNotMinimal: return "WitnessNotMinimal";
    case Errc::InvalidCriticalPoint: return "InvalidCriticalPoint";
    case Errc::MalformedInput: return "MalformedInput";
    case Errc::UnknownSubcommand: return "UnknownSubcommand";
  }
  return "Unknown";
}

std::string_view owning_module(Errc code) {
  switch (code) {
    case Errc::NonSquarefree:
    case Errc::EvenDegree:
    case Errc::GenusTooSmall:
    case Errc::InvalidPoint:
    case Errc::UnsupportedSupport:
    case Errc::PoleAtPoint:
    case Errc::WeierstrassPoint:
    case Errc::ZeroSection:
      return "curve";
    case Errc::InvalidBundlePair:
    case Errc::InadmissibleSupport:
    case Errc::BasisPoleCollision:
    case Errc::DegenerateRank:
    case Errc::DimensionMismatch:
    case Errc::BoundViolation:
    case Errc::ZeroClass:
      return "secant";
    case Errc::InvalidParams:
    case Errc::OutOfRange:
      return "morse";
    case Errc::InvalidMultiplicity:
    case Errc::SmoothnessFailure:
    case Errc::NegativeUExponent:
      return "localmodel";
    case Errc::BudgetViolation:
    case Errc::WitnessNotMinimal:
    case Errc::InvalidCriticalPoint:
      return "resolution";
    case Errc::MalformedInput:
    case Errc::UnknownSubcommand:
      return "cli";
  }
  return "unknown";
}

Error::Error(Errc code, const std::string& detail)
    : std::runtime_error(std::string(owning_module(code)) + ": " + std::string(to_string(code)) +
                         (detail.empty() ? "" : ": " + detail)),
      code_(code),
      detail_(detail) {}

}  // namespace secantflow
