#pragma once

#include <stdexcept>
#include <string>

namespace pjt {

/// Malformed input document (CNF, JT or PACE). `line` is 1-based, 0 when the
/// problem is not tied to a single line (e.g. a missing problem line).
class ParseError : public std::runtime_error {
public:
  ParseError(int line, const std::string &message)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                    : message),
        line_(line) {}

  [[nodiscard]] int line() const noexcept { return line_; }

private:
  int line_;
};

/// A dense table or diagram would exceed the configured size cap.
class ResourceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Structurally invalid input to an algorithm (e.g. a tree that fails validation).
class InvalidInput : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace pjt
