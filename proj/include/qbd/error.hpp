#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qbd {

enum class ErrorKind {
  MalformedPermutation,
  Disconnected,
  NonPlanar,
  MalformedQuadrangulation,
  InvalidPerimeter,
  BijectionInternal,
  CoreUndefined,
  PreconditionViolated,
  PerimeterMismatch,
  CemeteryInput,
  MissingBackReferences,
  NotACorrespondence,
  NonIntegralProduct,
  DomainError,
  ZeroDenominator,
  UniverseTooLarge,
  UnknownCode,
  EmptySample,
  ParseError,
  ConfigError,
};

std::string_view to_string(ErrorKind kind);

/// Single exception type for the library; `kind()` tells callers which
/// contract was broken.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qbd
