#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hamcount {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input violates an operation's precondition.
class DomainError : public Error {
 public:
  using Error::Error;
};

// An exact oracle was asked for an order above its configured cap.
class CapExceeded : public Error {
 public:
  CapExceeded(const std::string& oracle, std::size_t order, std::size_t cap)
      : Error(oracle + ": order " + std::to_string(order) + " exceeds cap " + std::to_string(cap)),
        order_(order),
        cap_(cap) {}

  std::size_t order() const { return order_; }
  std::size_t cap() const { return cap_; }

 private:
  std::size_t order_;
  std::size_t cap_;
};

// Malformed graph or matrix file. line() is 1-based, 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Iterative scaling ran out of sweeps before reaching the tolerance band.
class ScalingError : public Error {
 public:
  ScalingError(const std::string& what, double achieved_deviation)
      : Error(what), achieved_deviation_(achieved_deviation) {}

  double achieved_deviation() const { return achieved_deviation_; }

 private:
  double achieved_deviation_;
};

// A numeric invariant that holds in exact arithmetic was violated beyond tolerance.
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace hamcount
