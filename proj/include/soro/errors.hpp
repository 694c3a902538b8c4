#pragma once

#include <stdexcept>

namespace soro {

// Input data or arguments violate a documented precondition.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An iterative solver exhausted its budget without reaching its certificate.
struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace soro
