#include "pdce/error.hpp"

namespace pdce {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::ImaginaryXi: return "ImaginaryXi";
    case Errc::DegenerateDenominator: return "DegenerateDenominator";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::OutOfDomain: return "OutOfDomain";
    case Errc::NonPositiveLambda: return "NonPositiveLambda";
    case Errc::ZeroLambda: return "ZeroLambda";
    case Errc::ChiSingular: return "ChiSingular";
    case Errc::PhiZero: return "PhiZero";
    case Errc::NotOnResonance: return "NotOnResonance";
    case Errc::NegativeMeanPhoton: return "NegativeMeanPhoton";
    case Errc::StepRejected: return "StepRejected";
    case Errc::NonFiniteState: return "NonFiniteState";
    case Errc::NormTooLarge: return "NormTooLarge";
    case Errc::TruncationUntrusted: return "TruncationUntrusted";
    case Errc::SingularEta: return "SingularEta";
    case Errc::ParseError: return "ParseError";
    case Errc::ValidationError: return "ValidationError";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace pdce
