#pragma once

#include <stdexcept>
#include <string>

namespace flp {

// Malformed input text (bad token, wrong arity, unknown keyword).
struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, const std::string& what)
      : std::runtime_error("line " + std::to_string(line_) + ": " + what), line(line_) {}
};

// Structurally well-formed data violating a model invariant.
struct ValidationError : std::runtime_error {
  std::string invariant;
  ValidationError(std::string invariant_, const std::string& what)
      : std::runtime_error(what), invariant(std::move(invariant_)) {}
};

// Request exceeds an enumeration size cap.
struct SizeCapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Internal solver failure (should not happen on valid inputs).
struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace flp
