#pragma once

#include <stdexcept>

namespace qpt {

// Absolute tolerance for Hermiticity, trace and eigenvalue-floor checks on
// dim <= 256 doubles; configurable per call where it matters.
inline constexpr double kDefaultTol = 1e-9;

// Error taxonomy mirrored by the CLI exit codes: validation, argument, size
// and I/O problems exit 2; scope problems (a scheme asked to run outside its
// supported register size) exit 3.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SizeError : Error {
  using Error::Error;
};
struct ArgumentError : Error {
  using Error::Error;
};
struct ValidationError : Error {
  using Error::Error;
};
struct ScopeError : Error {
  using Error::Error;
};
struct IoError : Error {
  using Error::Error;
};

}  // namespace qpt
