#ifndef CHECKWORTHY_ERRORS_HPP_
#define CHECKWORTHY_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace checkworthy {

// Base class for every error raised by the library. Subclasses name the
// failure category so callers (and the CLI) can map them to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// A required column or field is missing from an input file.
class SchemaError : public Error {
 public:
  using Error::Error;
};

// Malformed value inside an otherwise well-formed file.
class ParseError : public Error {
 public:
  using Error::Error;
};

// File does not follow the expected layout at all (e.g. missing header).
class FormatError : public Error {
 public:
  using Error::Error;
};

class EmptyDatasetError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class ArgumentError : public Error {
 public:
  using Error::Error;
};

// Input is well-formed but too degenerate for the requested statistic.
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

// AP / R-precision requested with no relevant items in the pool.
class UndefinedMetricError : public Error {
 public:
  using Error::Error;
};

// Padded batch length is smaller than a convolution width.
class BatchTooShortError : public Error {
 public:
  using Error::Error;
};

// Non-finite values appeared during optimisation.
class TrainingError : public Error {
 public:
  using Error::Error;
};

// Mismatched shapes between cooperating internal structures.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace checkworthy

#endif  // CHECKWORTHY_ERRORS_HPP_
