#pragma once

#include <stdexcept>
#include <string>

namespace drinfeld {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid or unsupported parameters (maps to CLI exit code 2).
struct ConfigError : Error {
  using Error::Error;
};

struct PreconditionError : Error {
  using Error::Error;
};

// A configured size cap would be exceeded (CLI exit code 3).
struct ResourceError : Error {
  using Error::Error;
};

// Computation needs data outside the window it was given.
struct WindowError : Error {
  using Error::Error;
};

struct SingularMatrixError : Error {
  using Error::Error;
};

}  // namespace drinfeld
