#pragma once

#include <stdexcept>
#include <string>

namespace hadamard {

// Caller passed arguments that do not fit together (model mismatch, bad
// parameter range, wrong vector length).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input lies outside the mathematical domain of the operation
// (non-SPD matrix, degenerate triangle).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Requested size would exceed the enumeration or representation limits.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Reading or writing a file failed.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A value of a simple function is not within epsilon of any center.
class CoverageError : public std::runtime_error {
 public:
  CoverageError(std::size_t atom, const std::string& label, double nearest)
      : std::runtime_error("atom " + std::to_string(atom) + " ('" + label +
                           "') is not covered; nearest center at distance " +
                           std::to_string(nearest)),
        atom_(atom) {}
  std::size_t atom() const { return atom_; }

 private:
  std::size_t atom_;
};

// Two-stage approximation ran out of stages before reaching the target.
class ApproximationFailure : public std::runtime_error {
 public:
  ApproximationFailure(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_(achieved) {}
  double achieved() const { return achieved_; }

 private:
  double achieved_;
};

}  // namespace hadamard
