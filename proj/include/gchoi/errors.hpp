#pragma once

#include <stdexcept>
#include <string>

namespace gchoi {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-domain input (negative coefficients, shape mismatch,
/// non-Hermitian matrices, unparsable files).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// The operation is only defined for a particular size or coefficient pattern.
class NotApplicable : public Error {
 public:
  using Error::Error;
};

/// Two proven conclusions contradict each other. Indicates a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace gchoi
