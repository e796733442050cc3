#pragma once

#include <stdexcept>
#include <string>

namespace resmatch {

// Malformed or out-of-contract input (CLI exit 2).
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exhaustive search refused because the instance exceeds a size guard (CLI exit 4).
struct GuardExceeded : std::runtime_error {
  GuardExceeded(const std::string& what, long guard)
      : std::runtime_error(what + " (guard " + std::to_string(guard) + ")"), guard(guard) {}
  long guard;
};

// Internal inconsistency: a recombination or certified assumption failed (CLI exit 3).
struct DefectError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// No reduction rule matched a non-elementary tree.
struct NonExhaustiveCaseAnalysis : DefectError {
  using DefectError::DefectError;
};

}  // namespace resmatch
