#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lexfield {

// Base class for every error thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Numeric argument outside its legal range (negative radius, sigma <= 0, ...).
struct DomainError : Error {
  using Error::Error;
};

// Vectors, matrices or words with inconsistent dimensions.
struct DimensionMismatch : Error {
  using Error::Error;
};

// Operation requested for a kernel kind it does not support.
struct UnsupportedKernel : Error {
  using Error::Error;
};

// Problem size above the supported desk-scale limit.
struct UnsupportedSize : Error {
  using Error::Error;
};

// Trajectory integration produced a non-finite state.
struct IntegrationDiverged : Error {
  IntegrationDiverged(const std::string& what, std::size_t step_index)
      : Error(what), step(step_index) {}
  std::size_t step;
};

// Normalization requested over an all-zero row of interaction strengths.
struct DegenerateNormalization : Error {
  using Error::Error;
};

// A caller-supplied function broke its contract (e.g. a negative weight).
struct ContractViolation : Error {
  using Error::Error;
};

// Malformed input text; line numbers are 1-based.
struct ParseError : Error {
  ParseError(const std::string& what, std::size_t line_number)
      : Error(what), line(line_number) {}
  std::size_t line;
};

// Token not present in the vocabulary.
struct UnknownToken : Error {
  using Error::Error;
};

}  // namespace lexfield
