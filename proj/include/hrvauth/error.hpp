#pragma once

#include <stdexcept>
#include <string>

namespace hrvauth {

/// Malformed input that cannot be parsed. Carries a 1-based line number
/// when the input is line-oriented (0 = not applicable).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, long line = 0)
      : std::runtime_error(line > 0 ? msg + " (line " + std::to_string(line) + ")"
                                    : msg),
        line_(line) {}
  long line() const { return line_; }

 private:
  long line_;
};

/// Input parsed but violates a domain invariant (ordering, sign, range).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Not enough samples/beats/rows to run the requested operation.
class InsufficientDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad configuration value or an unusable combination of settings.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Filesystem-level failure (missing file, unwritable path).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hrvauth
