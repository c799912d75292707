#pragma once

#include <stdexcept>
#include <string>

namespace polybarrier {

/// A precondition on an argument was violated (bad degree, point outside the
/// certified domain, empty grid, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An iterative numerical method failed to reach its stopping criterion.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace polybarrier
