#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace singode {

enum class ErrorKind {
  NotOnLocus,
  NonTransversal,
  DegenerateEigen,
  NotSingularPoint,
  StepSizeUnderflow,
  SeedRejected,
  InsufficientSamples,
  InvalidInput,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

// All library failures derive from this; `kind()` lets callers (the CLI in
// particular) map failures onto exit codes without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace singode
