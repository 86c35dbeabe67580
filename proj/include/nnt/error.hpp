#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nnt {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed tensor or hypergraph input; carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Raised by routines that need a weakly irreducible tensor. Reducible input
/// should go through the decomposition module instead.
class NotWeaklyIrreducible : public Error {
 public:
  NotWeaklyIrreducible()
      : Error("tensor is not weakly irreducible; use decompose() / "
              "eigenvariety_dimension() for reducible input") {}
};

/// The power iteration ran out of iterations. The best bracket reached is kept.
class ConvergenceError : public Error {
 public:
  ConvergenceError(double lower, double upper, std::size_t iterations)
      : Error("power iteration did not converge after " + std::to_string(iterations) +
              " iterations; bracket [" + std::to_string(lower) + ", " + std::to_string(upper) +
              "]"),
        lower_(lower),
        upper_(upper),
        iterations_(iterations) {}

  double lower() const noexcept { return lower_; }
  double upper() const noexcept { return upper_; }
  std::size_t iterations() const noexcept { return iterations_; }

 private:
  double lower_;
  double upper_;
  std::size_t iterations_;
};

/// An enumeration would exceed its configured budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace nnt
