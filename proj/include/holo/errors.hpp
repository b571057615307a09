#pragma once

#include <stdexcept>
#include <string>

namespace holo {

// Shapes that do not fit together.
struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Input outside the domain of a function (e.g. a clearly negative eigenvalue
// handed to a PSD square root).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Caller broke a documented precondition.
struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NumericalInstability : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A phase was requested from a vanishing overlap.
struct UndefinedPhase : std::domain_error {
  using std::domain_error::domain_error;
};

// Parameter choices the closed forms do not cover.
struct UnsupportedBranch : std::domain_error {
  using std::domain_error::domain_error;
};

}  // namespace holo
