#pragma once

#include <stdexcept>
#include <string>

namespace lsc {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Tensor or parameter shapes that do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Node, edge or row index outside its valid range.
class IndexError : public Error {
 public:
  using Error::Error;
};

// Input that violates a documented precondition or invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Malformed bundle/config file. The message carries file:line.
class ParseError : public Error {
 public:
  using Error::Error;
};

// API misuse, e.g. backward() on a non-scalar or an optimizer step without gradients.
class ContractError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// A metric that is not defined for the given input (e.g. AUC with one class).
class UndefinedMetricError : public Error {
 public:
  using Error::Error;
};

// Training diverged (non-finite loss).
class TrainingError : public Error {
 public:
  using Error::Error;
};

}  // namespace lsc
