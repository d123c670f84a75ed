#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vistrack {

// Base of every error thrown by the library. The CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// w == 0 on a homogeneous point.
class DegeneratePointError : public Error {
 public:
  using Error::Error;
};

// Non-positive depth under the camera.
class BehindCameraError : public Error {
 public:
  using Error::Error;
};

// Singular innovation covariance, all-zero particle weights.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// Malformed input file; carries the 1-based line number (0 when not line-specific).
class FormatError : public Error {
 public:
  FormatError(const std::string& path, std::size_t line, const std::string& what)
      : Error(path + (line > 0 ? ":" + std::to_string(line) : std::string{}) + ": " + what),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace vistrack
