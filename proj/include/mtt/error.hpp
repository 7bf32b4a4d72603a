#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mtt {

enum class ErrorKind {
  InvalidArgument,
  DimensionMismatch,
  WrongDimension,
  NotNormal,
  NoConvergence,
  NotCSymmetricWithRespectToC,
  NotAntiSymmetricWithRespectToK,
  BudgetTooLarge,
  NotScalar,
  OddDimensionSkew,
  SplitResidualTooLarge,
  SpectrumNotConjugateSymmetric,
  QStructureViolated,
  BlockLeakage,
  RefinementStalled,
  NotUET,
  Undetermined,
  InvalidSpec,
  Parse,
  InvariantViolated,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries one of the kinds above so that
// callers (the CLI in particular) can branch on the mathematical outcome.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

}  // namespace mtt
