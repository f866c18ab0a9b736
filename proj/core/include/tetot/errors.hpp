#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tetot {

// Error classes. The CLI maps each class to an exit code, so new failure
// modes should derive from one of these rather than std::runtime_error.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller passed arguments that violate a precondition.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A file does not match its declared binary/text layout.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// A file is well-formed but its contents are invalid (NaN, bad label...).
class DataError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Matrix expected to be positive semidefinite has a clearly negative eigenvalue.
class NotPsdError : public InputError {
 public:
  using InputError::InputError;
};

/// Undefined statistic, e.g. correlation of a constant series.
class UndefinedError : public InputError {
 public:
  using InputError::InputError;
};

using WarningHandler = std::function<void(std::string_view)>;

// Non-fatal diagnostics (saturated subsampling, zero-norm rows, ...) go
// through a process-wide handler. The default writes "warning: ..." to stderr.
// Returns the previous handler.
WarningHandler set_warning_handler(WarningHandler handler);
void warn(std::string_view message);

}  // namespace tetot
