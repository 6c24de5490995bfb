#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace entsort {

/// Operand shapes do not fit the operation.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input outside the mathematical domain of the operation (non-hermitean,
/// unnormalized, index out of range, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A numerical routine failed to converge or produced non-finite output.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Gram-Schmidt met a member that is (numerically) in the span of the
/// previous ones.
class DependentSystemError : public std::runtime_error {
 public:
  DependentSystemError(std::size_t index, const std::string& what)
      : std::runtime_error(what), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// Wraps a failure raised while processing one element of a collection.
class StateError : public std::runtime_error {
 public:
  StateError(std::size_t index, const std::string& what)
      : std::runtime_error("state " + std::to_string(index) + ": " + what),
        index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

}  // namespace entsort
