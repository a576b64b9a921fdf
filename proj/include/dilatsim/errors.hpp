#pragma once

#include <stdexcept>
#include <string>

namespace dilatsim {

// Bad or inconsistent user input (config files, CLI values, module
// preconditions on user-supplied parameters). CLI exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// A numerical check failed (fidelity below threshold, residual above
// tolerance, truncation leakage). CLI exit code 3.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

// Request is well-formed but cannot be represented at desk scale
// (dense cap exceeded, mass ratio outside the dual-grid bound).
// CLI exit code 4.
class FeasibilityError : public std::runtime_error {
 public:
  explicit FeasibilityError(const std::string& msg) : std::runtime_error(msg) {}
};

// Rescaled state support does not fit the target grid; carries the
// measured norm leakage.
class TruncationError : public NumericalError {
 public:
  TruncationError(const std::string& msg, double leakage)
      : NumericalError(msg), leakage_(leakage) {}
  double leakage() const { return leakage_; }

 private:
  double leakage_;
};

}  // namespace dilatsim
