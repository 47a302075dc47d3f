#pragma once

#include <stdexcept>
#include <string>

namespace ftmodsym {

// Malformed textual input (polynomials, points, CLI arguments).
struct ParseError : std::invalid_argument {
  explicit ParseError(const std::string& what) : std::invalid_argument(what) {}
};

// A mathematical precondition does not hold. `reason` is a stable
// machine-readable tag, `what()` the human-readable detail.
struct PreconditionError : std::domain_error {
  PreconditionError(std::string reason, const std::string& what)
      : std::domain_error(what), reason(std::move(reason)) {}
  std::string reason;
};

// An internal consistency check failed (should never happen).
struct InvariantError : std::logic_error {
  explicit InvariantError(const std::string& what) : std::logic_error(what) {}
};

inline void require(bool cond, const char* reason, const std::string& what) {
  if (!cond) throw PreconditionError(reason, what);
}

inline void ensure(bool cond, const std::string& what) {
  if (!cond) throw InvariantError(what);
}

}  // namespace ftmodsym
