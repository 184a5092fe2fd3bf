#pragma once

#include <stdexcept>
#include <string>

namespace evosplit {

/// Invalid or inconsistent user-supplied configuration. Maps to CLI exit code 1.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical failure: singular solve, overflow, or an unmet accuracy target.
/// Maps to CLI exit code 2.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace evosplit
