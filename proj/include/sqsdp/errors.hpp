#pragma once

#include <stdexcept>
#include <string>

namespace sqsdp {

/// Operand shapes do not agree (matrix orders, vector lengths).
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical routine (eigensolver, factorization) failed.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid option values or missing oracles.
class ConfigurationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace sqsdp
