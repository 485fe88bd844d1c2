#pragma once

#include <stdexcept>
#include <string>

namespace partsmm {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text (model files, WCNF, solver output, probe records).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Input that parses but violates a data-model invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Hard clauses admit no model.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

/// A file could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace partsmm
