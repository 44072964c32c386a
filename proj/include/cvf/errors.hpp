#pragma once

#include <stdexcept>
#include <string>

namespace cvf {

// All recoverable failures surface as Error. Input errors map to exit code 2
// on the CLI, internal invariant violations to exit code 3.
class Error : public std::runtime_error {
 public:
  enum class Kind { Input, Internal };

  Error(Kind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

[[noreturn]] inline void throw_input(const std::string& message) {
  throw Error(Error::Kind::Input, message);
}

[[noreturn]] inline void throw_internal(const std::string& message) {
  throw Error(Error::Kind::Internal, message);
}

}  // namespace cvf
