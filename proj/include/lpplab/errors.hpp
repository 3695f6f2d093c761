#pragma once

#include <stdexcept>
#include <string>

namespace lpplab {

enum class ErrorKind {
  kInvalidArgument,
  kOutOfDomain,
  kCapacity,
  kNoOptimizer,
  kParse,
  kValidation,
};

const char* to_string(ErrorKind kind) noexcept;

// Every failure raised by the library carries one of the kinds above so the
// CLI can map it onto a stable exit code.
class LabError : public std::runtime_error {
 public:
  LabError(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw LabError(kind, message);
}

inline void require(bool condition, ErrorKind kind, const std::string& message) {
  if (!condition) fail(kind, message);
}

}  // namespace lpplab
