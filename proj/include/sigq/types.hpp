#pragma once

#include <complex>
#include <cstddef>

namespace sigq {

using Complex = std::complex<double>;

// Default max-norm tolerance for semi-unitarity checks.
inline constexpr double kDefaultSemiUnitaryTol = 1e-12;

// Amplitudes with modulus below this are dropped from sparse labstates.
inline constexpr double kAmplitudePrune = 1e-15;

// Largest net rank the dense tensor-product oracle will materialize (2^14 amplitudes).
inline constexpr std::size_t kOracleRankCap = 14;

// Agreement required between the fast path and the dense oracle.
inline constexpr double kOracleMatchTol = 1e-12;

// A per-step norm residual beyond this aborts a run as a numeric-integrity failure.
inline constexpr double kConservationBreach = 1e-8;

// Tolerance on parameter-set constraints (unit norms, orthogonality).
inline constexpr double kParamTol = 1e-12;

// Tolerance on state normalization at interface boundaries.
inline constexpr double kStateNormTol = 1e-10;

// Config files may carry hand-rounded decimals; constraints are accepted and
// renormalized when within this tolerance, rejected beyond it.
inline constexpr double kConfigNormTol = 1e-9;

}  // namespace sigq
