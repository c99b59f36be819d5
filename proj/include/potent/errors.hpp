#ifndef POTENT_ERRORS_HPP
#define POTENT_ERRORS_HPP

#include <stdexcept>

namespace potent {

/// Thrown when a semi-infinite integral is detected to grow without bound.
class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when the quadrature error estimate stalls above the requested
/// tolerance without evidence of divergence.
class NonConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown by the Monte Carlo harness when too few samples exceed the
/// threshold to form a usable empirical distribution.
class InsufficientDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace potent

#endif  // POTENT_ERRORS_HPP
