#pragma once

#include <stdexcept>
#include <string>

namespace weylchar {

/// Malformed or inconsistent input data (schema, validation, datum mismatch).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A mathematical assertion failed on otherwise well-formed input
/// (integrality of a class function, a golden-table mismatch).
class MathError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad command-line usage.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace weylchar
