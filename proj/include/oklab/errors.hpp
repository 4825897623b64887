// errors.hpp
//
// Error taxonomy. Distinct types let callers tell a malformed input from a
// legitimately empty result or an exceeded desk-scale cap.

#pragma once

#include <stdexcept>
#include <string>

namespace oklab {

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct EmptyInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A configured desk-scale cap was exceeded; partial results may exist.
struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A flag transform sent a section exponent outside the nonnegative orthant.
struct InvalidFlag : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Fiber requested outside the projection of a cone (not malformed input).
struct EmptyFiber : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PreconditionFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Cached data violated a structural invariant (e.g. multiplicativity).
struct AuditFailure : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace oklab
