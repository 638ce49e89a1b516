#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace kmeff {

/// Argument outside an operation's documented domain.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A size/dimension argument that cannot describe a valid object (e.g. n = 0).
class InvalidDimension : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// Input lies outside the convergence domain of a series (matrix logarithm).
/// Distinct from a numerical failure inside the domain.
class OutOfDomain : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// (1-p) ln(1/a2) < p ln(a1) does not hold.
class BalanceViolation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A field that is numerically zero where a nonzero one is required.
class DegenerateInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Every sublevel measure on an epsilon grid vanished; the grid must move up.
class GridTooSmall : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Unsupported : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Lattice enumeration would need an entry bound larger than the configured
/// cap. Carries the cap that would have been required.
class EnumerationCapExceeded : public std::runtime_error {
 public:
  EnumerationCapExceeded(std::int64_t required, std::int64_t configured)
      : std::runtime_error("lattice enumeration needs entry bound " +
                           std::to_string(required) + " but the cap is " +
                           std::to_string(configured)),
        required_(required),
        configured_(configured) {}

  std::int64_t required_cap() const { return required_; }
  std::int64_t configured_cap() const { return configured_; }

 private:
  std::int64_t required_;
  std::int64_t configured_;
};

}  // namespace kmeff
