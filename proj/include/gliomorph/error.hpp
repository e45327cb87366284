#pragma once

#include <stdexcept>
#include <string>

namespace gliomorph {

// Error categories used across the library. The CLI maps everything except
// Internal to exit code 2 (bad input), Internal to exit code 1.
enum class ErrorKind {
  Io,           // file missing, truncated, unreadable
  Format,       // file is not in the expected format at all
  Unsupported,  // recognized format, feature outside the supported subset
  Parse,        // malformed field or value
  Validation,   // well-formed input violating an invariant or precondition
  Data,         // input data makes the requested computation impossible
  Internal,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::Io: return "io";
    case ErrorKind::Format: return "format";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Validation: return "validation";
    case ErrorKind::Data: return "data";
    case ErrorKind::Internal: return "internal";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + " error: " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace gliomorph
