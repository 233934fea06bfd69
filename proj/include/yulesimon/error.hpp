#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace yulesimon {

/// Parameter outside the domain of a distribution or function.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Observed data violate a model precondition (k < 1, empty sample, ...).
class DataError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A diagnostic or estimator is undefined on the given input (zero variance).
class DegenerateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The likelihood has no finite maximiser.
class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Iterative solver hit its iteration cap; carries the last iterate.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double last_iterate)
      : std::runtime_error(what), last_iterate_(last_iterate) {}
  double last_iterate() const noexcept { return last_iterate_; }

 private:
  double last_iterate_;
};

/// Malformed text encoding; offset is the byte position of the bad sequence.
class DecodeError : public std::runtime_error {
 public:
  DecodeError(const std::string& what, std::size_t offset)
      : std::runtime_error(what), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace yulesimon
