#ifndef OPPQ_ERRORS_HPP
#define OPPQ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace oppq {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Mismatched or invalid array/matrix dimensions.
struct DimensionError : Error {
  using Error::Error;
};

// Working precision exhausted (e.g. a squared norm went non-positive).
// The message names the failing degree and suggests raising the digit count.
struct PrecisionError : Error {
  using Error::Error;
};

// null_vector called on a matrix with no numerically small pivot.
struct NoKernelError : Error {
  using Error::Error;
};

// Quadrature refinement levels disagree, or an iteration failed to settle.
struct NonConvergenceError : Error {
  using Error::Error;
};

// Invalid problem/weight pairing or malformed identifiers and options.
struct ConfigError : Error {
  using Error::Error;
};

// Evaluation at (or too close to) a pole of the target function.
struct SingularityError : Error {
  using Error::Error;
};

}  // namespace oppq

#endif
