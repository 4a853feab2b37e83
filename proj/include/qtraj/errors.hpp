#pragma once

#include <stdexcept>
#include <string>

namespace qtraj {

inline constexpr int kExitConfigError = 2;
inline constexpr int kExitIoError = 3;
inline constexpr int kExitNumericalGuard = 4;

// Bad configuration value or unknown key. CLI exit code 2.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Output path could not be created or written. CLI exit code 3.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A discretization guard tripped (gamma*dt too large, flip probability > 0.5).
// CLI exit code 4.
class NumericalGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Statistic undefined for the given input (too few points, zero rank variance).
class UndefinedStatisticError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace qtraj
