#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace aispart {

/// A caller broke a precondition (length mismatch, index out of range).
struct ContractViolation : std::logic_error {
  using std::logic_error::logic_error;
};

/// Parameters rejected before any work starts.
struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// The request is well formed but exceeds what an exact oracle can handle.
struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace aispart
