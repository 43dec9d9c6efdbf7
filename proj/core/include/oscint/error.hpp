#pragma once

#include <stdexcept>
#include <string>

namespace oscint {

enum class ErrorKind {
  VariableMismatch,
  UnknownVariable,
  FiltrationTooLow,
  BadConstantTerm,
  NameCollision,
  InsufficientTruncation,
  SingularMatrix,
  SingularHessian,
  NonzeroCriticalValue,
  NonzeroGradient,
  NotSecondOrder,
  NonUnitLeading,
  NotHermitianType,
  NotRealData,
  InconsistentSystem,
  IntegrabilityFailure,
  QuadratureFailure,
  PositiveDirection,
  InvalidArgument,
  Parse,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Thrown when an input jet or distribution does not carry enough terms.
// `required` is the weight (or order) that would have been needed.
class InsufficientTruncation : public Error {
 public:
  InsufficientTruncation(const std::string& what, int required, int available)
      : Error(ErrorKind::InsufficientTruncation,
              what + " (required " + std::to_string(required) + ", available " +
                  std::to_string(available) + ")"),
        required_(required),
        available_(available) {}

  int required() const noexcept { return required_; }
  int available() const noexcept { return available_; }

 private:
  int required_;
  int available_;
};

}  // namespace oscint
