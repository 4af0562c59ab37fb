#pragma once

#include <stdexcept>
#include <string>

namespace torlat {

enum class ErrorKind {
  InvalidInput,         // malformed or out-of-contract input
  CapExceeded,          // group closure did not terminate below the cap
  InternalConsistency,  // a property guaranteed by theory failed: always a bug
  OutOfScope,           // valid input the library does not handle
  NotDiscrete,          // a Z-span that is not a lattice in V
  DomainError,          // arithmetic domain errors (division by zero, ...)
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

inline void require(bool condition, ErrorKind kind, const std::string& message) {
  if (!condition) fail(kind, message);
}

/// Process exit code used by the command-line tool for each error kind.
inline int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::CapExceeded:
      return 3;
    case ErrorKind::InternalConsistency:
      return 4;
    default:
      return 2;
  }
}

inline const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::CapExceeded: return "cap-exceeded";
    case ErrorKind::InternalConsistency: return "internal-consistency";
    case ErrorKind::OutOfScope: return "out-of-scope";
    case ErrorKind::NotDiscrete: return "not-discrete";
    case ErrorKind::DomainError: return "domain-error";
  }
  return "unknown";
}

}  // namespace torlat
