#pragma once

#include <stdexcept>
#include <string>

namespace ldmcap {

/// Bad caller-supplied argument (sizes, ranges, dimensions).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input file could not be parsed.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dataset violates a structural requirement (e.g. fewer than two classes).
class InvalidDatasetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Requested labeling space is too large to enumerate.
class CapacityLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of a mathematical function.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An iterative method produced a non-finite value.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ldmcap
