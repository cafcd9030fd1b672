#include "spingauge/errors.hpp"

namespace spingauge {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonHermitianInput: return "NonHermitianInput";
    case ErrorKind::UnnormalizedState: return "UnnormalizedState";
    case ErrorKind::StepTooSmall: return "StepTooSmall";
    case ErrorKind::UnnormalizedSpin: return "UnnormalizedSpin";
    case ErrorKind::UnsupportedFieldSpec: return "UnsupportedFieldSpec";
    case ErrorKind::NonFiniteState: return "NonFiniteState";
    case ErrorKind::UnresolvableWavepacket: return "UnresolvableWavepacket";
    case ErrorKind::StabilityBound: return "StabilityBound";
    case ErrorKind::UnnormalizedField: return "UnnormalizedField";
    case ErrorKind::MismatchedScenarios: return "MismatchedScenarios";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

int exit_code(ErrorKind kind) { return 10 + static_cast<int>(kind); }

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

ParseError::ParseError(int line, int column, const std::string& message)
    : Error(ErrorKind::ParseError,
            "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

ValidationError::ValidationError(std::string field, const std::string& reason)
    : Error(ErrorKind::ValidationError, field + ": " + reason), field_(std::move(field)) {}

}  // namespace spingauge
