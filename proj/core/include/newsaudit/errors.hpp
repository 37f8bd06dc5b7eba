#pragma once

#include <stdexcept>
#include <string>

namespace newsaudit {

// Input violated a documented contract (bad config, bad corpus, bad ids).
// The CLI maps this family to exit code 1.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// A file or line could not be parsed. Carries a 1-based line number when known.
class ParseError : public ValidationError {
 public:
  ParseError(const std::string& what, long line = -1)
      : ValidationError(line >= 0 ? what + " (line " + std::to_string(line) + ")" : what),
        line_(line) {}
  long line() const { return line_; }

 private:
  long line_;
};

// Filesystem-level failure (missing file, unwritable directory).
// The CLI maps this family to exit code 2.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// HTTP transport failure after retry policy is exhausted, or a
// non-retryable response (auth). Carries the per-attempt log.
class TransportError : public std::runtime_error {
 public:
  TransportError(const std::string& what, std::string attempt_log)
      : std::runtime_error(what), attempt_log_(std::move(attempt_log)) {}
  const std::string& attempt_log() const { return attempt_log_; }

 private:
  std::string attempt_log_;
};

}  // namespace newsaudit
