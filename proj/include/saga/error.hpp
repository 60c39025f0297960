#pragma once

#include <stdexcept>
#include <string>

namespace saga {

/// Base class for every error the toolkit reports through exceptions.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an internal consistency check fails (e.g. a solver model that
/// does not replay). Always indicates a bug, never bad user input.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace saga
