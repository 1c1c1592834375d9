#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sigq/types.hpp"

namespace sigq {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Dimension mismatches (matrix shapes, vector lengths).
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Out-of-domain arguments (negative counts, bad ranges).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// A constructed object failed its defining constraint.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Qubit slot index outside a net's rank.
class SlotError : public Error {
 public:
  using Error::Error;
};

// Two objects built over incompatible nets.
class NetError : public Error {
 public:
  using Error::Error;
};

// A state was not confined to the expected signal class.
class SectorError : public Error {
 public:
  using Error::Error;
};

// Dense-oracle request beyond the rank cap.
class OracleSizeError : public Error {
 public:
  using Error::Error;
};

// Unknown channel label or out-of-range step lookup.
class LookupError : public Error {
 public:
  using Error::Error;
};

// 2x2 matrix with a repeated eigenvalue and a single eigenvector.
class DegenerateMatrixError : public Error {
 public:
  DegenerateMatrixError(const std::string& what, Complex repeated)
      : Error(what), repeated_(repeated) {}
  Complex repeated_eigenvalue() const { return repeated_; }

 private:
  Complex repeated_;
};

// Oscillation parameters with |Re a| = 1 admit no two-mode dynamics.
class DegenerateOscillationError : public Error {
 public:
  using Error::Error;
};

// A schedule produced an operator that does not fit the evolving state.
class ScheduleError : public Error {
 public:
  ScheduleError(const std::string& what, int step) : Error(what), step_(step) {}
  int step() const { return step_; }

 private:
  int step_;
};

// Probability conservation broke down mid-run.
class NumericIntegrityError : public Error {
 public:
  NumericIntegrityError(const std::string& what, int step, double residual)
      : Error(what), step_(step), residual_(residual) {}
  int step() const { return step_; }
  double residual() const { return residual_; }

 private:
  int step_;
  double residual_;
};

// Config loading failed; carries every problem found, not just the first.
class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<std::string> issues)
      : Error(join(issues)), issues_(std::move(issues)) {}
  const std::vector<std::string>& issues() const { return issues_; }

 private:
  static std::string join(const std::vector<std::string>& issues) {
    std::string out = "invalid config";
    for (const auto& s : issues) {
      out += "\n  - ";
      out += s;
    }
    return out;
  }
  std::vector<std::string> issues_;
};

}  // namespace sigq
