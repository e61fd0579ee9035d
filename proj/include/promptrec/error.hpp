#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace promptrec {

// Base for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid argument or violated precondition (self-rating, out-of-range rating,
// unknown prompt, bad config).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Filesystem failures: missing input, unwritable output.
class IoError : public Error {
 public:
  using Error::Error;
};

// Malformed input data. Carries the 1-based line number of the offending row.
class DataError : public Error {
 public:
  DataError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace promptrec
