// crofton-lab: error types shared across modules
#pragma once

#include <stdexcept>
#include <string>

namespace crofton {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed expression or config text; position is a 0-based byte offset.
struct ParseError : Error {
  std::size_t position;
  ParseError(const std::string& msg, std::size_t pos)
      : Error(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}
};

// Evaluation outside the domain of definition (division by zero, log of a
// non-positive value, ...). Never reported as a silent NaN.
struct DomainError : Error {
  using Error::Error;
};

// Bad user input: config file, flag values, metric positivity.
struct ConfigError : Error {
  using Error::Error;
};

// Geodesic integration failure (max length exceeded, step underflow).
struct SolverError : Error {
  using Error::Error;
};

}  // namespace crofton
