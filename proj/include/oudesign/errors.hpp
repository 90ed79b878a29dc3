#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace oudesign {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid argument values: counts too small, ratios out of range, bad bounds.
struct DomainError : Error {
  using Error::Error;
};

// Point sequence violates the strict coordinate monotonicity required of
// monotone designs. `index` is the first offending point (or increment).
struct ConditionDViolation : Error {
  ConditionDViolation(const std::string& what, std::size_t index_)
      : Error(what), index(index_) {}
  std::size_t index;
};

// Coordinates must be strictly positive unless explicitly relaxed.
struct NonpositiveCoordinate : Error {
  NonpositiveCoordinate(const std::string& what, std::size_t index_)
      : Error(what), index(index_) {}
  std::size_t index;
};

// A skewed increment fell below the floor: 1/(1-q^2) is no longer meaningful.
struct DegenerateDesign : Error {
  using Error::Error;
};

// Cholesky factorization failed; duplicate points or invalid parameters.
struct NotPositiveDefinite : Error {
  using Error::Error;
};

// Malformed input file.
struct ParseError : Error {
  using Error::Error;
};

}  // namespace oudesign
