#include "hodgelab/error.hpp"

namespace hodgelab {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ShapeMismatch: return "SHAPE_MISMATCH";
    case ErrorCode::RelationViolation: return "RELATION_VIOLATION";
    case ErrorCode::ParseError: return "PARSE_ERROR";
    case ErrorCode::ValidationError: return "VALIDATION_ERROR";
    case ErrorCode::JacobiViolation: return "JACOBI_VIOLATION";
    case ErrorCode::NonIntegrable: return "NON_INTEGRABLE";
    case ErrorCode::NotPositiveDefinite: return "NOT_POSITIVE_DEFINITE";
    case ErrorCode::TolAmbiguous: return "TOL_AMBIGUOUS";
    case ErrorCode::LambdaNearEigenvalue: return "LAMBDA_NEAR_EIGENVALUE";
    case ErrorCode::HZero: return "H_ZERO";
    case ErrorCode::SectorInvalid: return "SECTOR_INVALID";
    case ErrorCode::MissingTrivial: return "MISSING_TRIVIAL";
    case ErrorCode::ModeMismatch: return "MODE_MISMATCH";
    case ErrorCode::ConfigError: return "CONFIG_ERROR";
    case ErrorCode::IoError: return "IO_ERROR";
  }
  return "UNKNOWN";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code) {}

void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace hodgelab
