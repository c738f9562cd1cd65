#pragma once

#include <stdexcept>
#include <string>

namespace steinitz {

// Error taxonomy shared by the library and the CLI front end. Each kind maps
// to a fixed process exit code: bad input exits 2, resource limits exit 3,
// and a violated mathematical invariant exits 4. The last class always means
// a bug in this library, never a property of the data.
enum class ErrorKind {
  InvalidInput,       // malformed values, rejected descriptor parameters
  IncompatibleTails,  // tail rules that cannot be combined or compared
  InfiniteIndex,      // singular lattice where finite index is required
  NotNormal,          // quotient requested by a non-normal subgroup
  NestingViolation,   // chain levels that are not properly nested
  MismatchAtLevel,    // presentation/chain degree disagreement
  Not1Dimensional,    // homeomorphism decision requested above dimension 1
  ResourceBound,      // enumeration would exceed the configured threshold
  InvariantViolation, // an identity guaranteed by theorem failed
};

const char* kind_name(ErrorKind k);
int exit_code_for(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

inline const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::IncompatibleTails: return "incompatible-tails";
    case ErrorKind::InfiniteIndex: return "infinite-index";
    case ErrorKind::NotNormal: return "not-normal";
    case ErrorKind::NestingViolation: return "nesting-violation";
    case ErrorKind::MismatchAtLevel: return "mismatch-at-level";
    case ErrorKind::Not1Dimensional: return "not-1-dimensional";
    case ErrorKind::ResourceBound: return "resource-bound";
    case ErrorKind::InvariantViolation: return "invariant-violation";
  }
  return "unknown";
}

inline int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::ResourceBound: return 3;
    case ErrorKind::InvariantViolation: return 4;
    default: return 2;
  }
}

}  // namespace steinitz
