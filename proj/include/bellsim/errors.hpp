#pragma once

#include <stdexcept>
#include <string>

namespace bellsim {

/// Raised when a computed quantity breaks a guarantee the library itself is
/// responsible for (a probability outside [0, 1], a bound that cannot fail
/// mathematically). The CLI maps this to exit code 2; bad user input maps to
/// std::invalid_argument and exit code 1.
struct invariant_violation : std::runtime_error {
  explicit invariant_violation(const std::string& what) : std::runtime_error(what) {}
};

inline void ensure_invariant(bool ok, const char* what) {
  if (!ok) {
    throw invariant_violation(what);
  }
}

}  // namespace bellsim
