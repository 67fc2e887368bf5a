#pragma once

#include <stdexcept>
#include <string>

namespace hodgelab {

enum class ErrorCode {
  ShapeMismatch,
  RelationViolation,
  ParseError,
  ValidationError,
  JacobiViolation,
  NonIntegrable,
  NotPositiveDefinite,
  TolAmbiguous,
  LambdaNearEigenvalue,
  HZero,
  SectorInvalid,
  MissingTrivial,
  ModeMismatch,
  ConfigError,
  IoError,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace hodgelab
