#pragma once

#include <stdexcept>
#include <string>

namespace evlab {

/// Solver or quadrature breakdown (non-convergence, underflow, singular
/// solves). Maps to exit code 3 in the CLI.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid experiment configuration. Maps to exit code 2 in the CLI.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace evlab
