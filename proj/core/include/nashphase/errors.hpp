#pragma once

#include <stdexcept>
#include <string>

namespace nashphase {

struct InvalidParam : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SizeLimitExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EdgeAbsent : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DegreeTooLarge : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EmptyHistogram : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Text-format errors carry the 1-based line number of the offending line.
struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_no, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line_no) + ": " + msg),
        line(line_no) {}
};

}  // namespace nashphase
