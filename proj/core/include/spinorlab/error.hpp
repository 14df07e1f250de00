#pragma once

#include <stdexcept>
#include <string>

namespace spinorlab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Amplitudes that cannot be renormalized onto the unit sphere.
class NormalizationError : public Error {
 public:
  using Error::Error;
};

class IntegrationAccuracyError : public Error {
 public:
  using Error::Error;
};

/// Consecutive path samples too far apart for a unique SU(2) lift.
class AmbiguousLiftError : public Error {
 public:
  using Error::Error;
};

/// Matrix handed in as a density operator fails Hermiticity, trace or positivity.
class InvalidDensityError : public Error {
 public:
  using Error::Error;
};

/// A requested evaluation route does not apply to the given source or splitter.
class EngineError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& message)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
              message),
        line_(line),
        column_(column),
        message_(message) {}

  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  int line_;
  int column_;
  std::string message_;
};

}  // namespace spinorlab
