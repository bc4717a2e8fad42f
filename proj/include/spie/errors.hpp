#pragma once

#include <stdexcept>

namespace spie {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Unreadable or malformed files, inconsistent excitation setups. The CLI maps
// these to exit code 1.
struct InputError : Error {
  using Error::Error;
};

// Singular systems or unacceptable residuals. Exit code 2.
struct NumericalError : Error {
  using Error::Error;
};

}  // namespace spie
