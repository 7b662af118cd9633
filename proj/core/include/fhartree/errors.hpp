#pragma once

#include <stdexcept>
#include <string>

namespace fhartree {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input outside an operation's documented domain (bad grid, parameters, config).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Ground-state iteration decayed to the zero solution.
class CollapseToZero : public Error {
 public:
  using Error::Error;
};

/// Malformed, truncated or inconsistent field snapshot.
class SnapshotError : public Error {
 public:
  using Error::Error;
};

}  // namespace fhartree
