#pragma once

#include <stdexcept>
#include <string>

namespace bei {

enum class ErrorKind {
  InvalidInput,
  UnknownVertex,
  MarkError,
  CapExceeded,
  NotSupported,
  ParseError,
  Internal,
};

class BeiError : public std::runtime_error {
public:
  BeiError(ErrorKind kind, std::string message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

  static const char* kind_name(ErrorKind k) {
    switch (k) {
      case ErrorKind::InvalidInput: return "invalid-input";
      case ErrorKind::UnknownVertex: return "unknown-vertex";
      case ErrorKind::MarkError: return "mark-error";
      case ErrorKind::CapExceeded: return "cap-exceeded";
      case ErrorKind::NotSupported: return "not-supported";
      case ErrorKind::ParseError: return "parse-error";
      case ErrorKind::Internal: return "internal-error";
    }
    return "unknown";
  }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) {
  throw BeiError(kind, msg);
}

} // namespace bei
