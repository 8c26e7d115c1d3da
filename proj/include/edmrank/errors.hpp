#pragma once

#include <stdexcept>

namespace edmrank {

// An instance that cannot be solved (e.g. an inner point strictly outside the
// outer polygon). Distinct from malformed input so callers can exit differently.
struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A symbolic computation was requested beyond the configured size limit.
struct SymbolicLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace edmrank
