#pragma once

#include <stdexcept>
#include <string>

namespace qws {

// Invalid argument or malformed construction parameters.
class InvalidParameter : public std::invalid_argument {
 public:
  explicit InvalidParameter(const std::string& msg) : std::invalid_argument(msg) {}
};

// Malformed input text. line is 1-based, 0 when the error is not tied to a line.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& msg, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg
                                    : msg),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class NumericFailure : public std::runtime_error {
 public:
  explicit NumericFailure(const std::string& msg) : std::runtime_error(msg) {}
};

class ResourceLimit : public std::runtime_error {
 public:
  explicit ResourceLimit(const std::string& msg) : std::runtime_error(msg) {}
};

// A bounded search ran out of budget. No partial answer is returned.
class PartialResult : public std::runtime_error {
 public:
  explicit PartialResult(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace qws
