#pragma once

#include <stdexcept>
#include <string>

namespace contour {

// Base of every error the library throws. `is_data_error()` separates bad
// input data (CLI exit code 2) from misuse of the API (exit code 1).
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what, bool data_error = true)
      : std::runtime_error(what), data_error_(data_error) {}
  bool is_data_error() const noexcept { return data_error_; }

 private:
  bool data_error_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error(what, false) {}
};

class NonFiniteInput : public Error {
 public:
  using Error::Error;
};

class SingularCovariance : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  explicit DimensionMismatch(const std::string& what) : Error(what, false) {}
};

class EmptySelection : public Error {
 public:
  using Error::Error;
};

class DegeneratePair : public Error {
 public:
  using Error::Error;
};

class TooFewSlices : public Error {
 public:
  using Error::Error;
};

class DegenerateConditioning : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, long row = -1, long column = -1)
      : Error(what), row_(row), column_(column) {}
  long row() const noexcept { return row_; }
  long column() const noexcept { return column_; }

 private:
  long row_;
  long column_;
};

class NonNumericCell : public ParseError {
 public:
  using ParseError::ParseError;
};

}  // namespace contour
