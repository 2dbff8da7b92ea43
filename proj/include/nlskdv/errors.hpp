#pragma once

#include <stdexcept>
#include <string>

namespace nlskdv {

/// Input fails an operation's argument contract (sizes, grids, ranges).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parameters lie outside the domain where the computed quantity is finite.
class DivergentInputError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Parameters lie outside the validity region of the asserted bound.
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A ratio whose denominator vanished (zero field where a nonzero one is required).
class DegenerateInputError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace nlskdv
