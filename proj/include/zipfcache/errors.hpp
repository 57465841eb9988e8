#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace zipfcache {

// Argument outside the mathematical domain of a formula (alpha >= 1, p <= 1, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The fitted law admits no consistent special points.
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Quadrature or root finding failed to converge.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A scaled hit ratio left [0, 1]; callers clamp against the ideal bounds.
class SaturationError : public std::range_error {
 public:
  explicit SaturationError(const std::string& what, double value)
      : std::range_error(what), value_(value) {}
  double value() const noexcept { return value_; }

 private:
  double value_;
};

// Invalid generator, simulator or policy configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed trace input. line() is 1-based; 0 when not tied to a line.
class TraceFormatError : public std::runtime_error {
 public:
  TraceFormatError(const std::string& what, std::size_t line)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// A file could not be opened, read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Event stream that violates the simulator's input contract (e.g. unsorted).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A policy could not free enough space for an admitted object.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace zipfcache
