#pragma once

#include <Eigen/Core>
#include <stdexcept>
#include <string>

namespace ecmo {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Error taxonomy used across the library. The CLI maps InputError to exit
// code 1 and DivergedError (see solver.hpp) to exit code 2.

/// Malformed argument: bad dimension, invalid weight vector, bad file field.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The operation is not supported for this object (e.g. a native function
/// where a monomial is required, or a fixture without a reference front).
class CapabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numeric evaluation produced a non-finite value.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ecmo
