#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace pdce {

enum class Errc {
  ImaginaryXi,
  DegenerateDenominator,
  DivisionByZero,
  OutOfDomain,
  NonPositiveLambda,
  ZeroLambda,
  ChiSingular,
  PhiZero,
  NotOnResonance,
  NegativeMeanPhoton,
  StepRejected,
  NonFiniteState,
  NormTooLarge,
  TruncationUntrusted,
  SingularEta,
  ParseError,
  ValidationError,
  InvalidArgument,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// Config errors carry the offending line (1-based, 0 when not line bound).
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error(Errc::ParseError, "line " + std::to_string(line) + ": " + what), line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

class ValidationError : public Error {
 public:
  ValidationError(std::string invariant, const std::string& what)
      : Error(Errc::ValidationError, invariant + ": " + what), invariant_(std::move(invariant)) {}

  const std::string& invariant() const noexcept { return invariant_; }

 private:
  std::string invariant_;
};

}  // namespace pdce
