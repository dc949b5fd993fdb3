#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace mvmds {

// Shape or representation problems in the inputs (wrong sizes, asymmetric
// distance matrices, infeasible couplings).
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Argument outside the mathematical domain of an operation (p < 1, empty
// support, empty sets).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Brute-force enumeration would exceed the configured guard.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what,
                          std::vector<double> trace = {})
      : std::runtime_error(what), trace_(std::move(trace)) {}

  const std::vector<double>& trace() const { return trace_; }

 private:
  std::vector<double> trace_;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(what + " (line " + std::to_string(line) + ")"),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace mvmds
