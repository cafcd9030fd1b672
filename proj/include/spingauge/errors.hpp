#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace spingauge {

/// Every failure the library can raise. The numeric value is stable and the
/// CLI maps it to a process exit code (see exit_code()).
enum class ErrorKind {
  NonHermitianInput = 1,
  UnnormalizedState,
  StepTooSmall,
  UnnormalizedSpin,
  UnsupportedFieldSpec,
  NonFiniteState,
  UnresolvableWavepacket,
  StabilityBound,
  UnnormalizedField,
  MismatchedScenarios,
  ParseError,
  ValidationError,
  IoError,
};

std::string_view to_string(ErrorKind kind);

/// Process exit code for a given error kind. Verify failures use 1 and
/// command-line usage errors use 2, so library errors start at 10.
int exit_code(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Parse failure with a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& message);

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

/// A well-formed config that names an invalid value or an inconsistent set
/// of sections.
class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& reason);

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace spingauge
