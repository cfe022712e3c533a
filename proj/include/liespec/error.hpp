#ifndef LIESPEC_ERROR_HPP
#define LIESPEC_ERROR_HPP

#include <stdexcept>
#include <string>

namespace liespec {

enum class ErrorCode {
  DivisionByZero,
  TowerDepthExceeded,
  IncompatibleTower,
  ConjugationUndefined,
  DimensionMismatch,
  DimensionLimitExceeded,
  SingularMatrix,
  NotADerivation,
  NotAHomomorphism,
  NotFullyFactorable,
  UnsupportedFieldExtension,
  ArrangementTooLarge,
  UnknownEntry,
  ParameterConstraintViolated,
  InternalInconsistency,
  InvalidArgument,
};

const char* error_code_name(ErrorCode code);

/// Domain error. Carries a stable code so the CLI can map failures to
/// exit statuses and JSON error objects without string matching.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace liespec

#endif
