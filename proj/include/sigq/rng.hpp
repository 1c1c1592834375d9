#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "sigq/types.hpp"

namespace sigq {

// Deterministic random source. mt19937_64 is fully specified by the standard,
// and the uniform/gaussian transforms below avoid the implementation-defined
// std::*_distribution classes, so a seed pins the exact stream of values.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1), 53 bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller; values are produced in pairs.
  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    // Shift into (0, 1] so the log is finite.
    const double u1 = static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(phi);
    has_spare_ = true;
    return r * std::cos(phi);
  }

  Complex complex_gaussian() {
    // Sequenced explicitly: argument evaluation order is not.
    const double re = gaussian();
    const double im = gaussian();
    return Complex{re, im};
  }

  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace sigq
