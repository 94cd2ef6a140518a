#include "qbd/error.hpp"

namespace qbd {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MalformedPermutation: return "MalformedPermutation";
    case ErrorKind::Disconnected: return "Disconnected";
    case ErrorKind::NonPlanar: return "NonPlanar";
    case ErrorKind::MalformedQuadrangulation: return "MalformedQuadrangulation";
    case ErrorKind::InvalidPerimeter: return "InvalidPerimeter";
    case ErrorKind::BijectionInternal: return "BijectionInternal";
    case ErrorKind::CoreUndefined: return "CoreUndefined";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::PerimeterMismatch: return "PerimeterMismatch";
    case ErrorKind::CemeteryInput: return "CemeteryInput";
    case ErrorKind::MissingBackReferences: return "MissingBackReferences";
    case ErrorKind::NotACorrespondence: return "NotACorrespondence";
    case ErrorKind::NonIntegralProduct: return "NonIntegralProduct";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::ZeroDenominator: return "ZeroDenominator";
    case ErrorKind::UniverseTooLarge: return "UniverseTooLarge";
    case ErrorKind::UnknownCode: return "UnknownCode";
    case ErrorKind::EmptySample: return "EmptySample";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace qbd
