#pragma once

#include <optional>
#include <utility>

#include "sigq/dynamics.hpp"

namespace sigq {

struct UvTheta {
  Complex u;     // real nonnegative by convention
  Complex v;
  double theta;  // in (0, pi); the per-step phase of the two eigenmodes
};

// Mixing amplitudes and phase for the unitary step [[a, -conj(b)], [b, conj(a)]]:
// cos(theta) = Re(a), and (u, v) is the e^{+i theta} eigenvector. Throws
// DegenerateOscillationError when |Re a| = 1 (single-mode, no oscillation).
UvTheta uv_theta_from_ab(Complex a, Complex b);

// Two-channel oscillation parameters. The step matrix is total-norm
// preserving for any unit (a, b); the mode decomposition additionally needs
// |Re a| < 1 and is surfaced through uv(), which throws on a degenerate pair.
class OscillationParams {
 public:
  OscillationParams(Complex a, Complex b);

  Complex a() const { return a_; }
  Complex b() const { return b_; }
  bool is_degenerate() const { return !uv_.has_value(); }
  const UvTheta& uv() const;

 private:
  Complex a_;
  Complex b_;
  std::optional<UvTheta> uv_;
};

// Constant-rank unitary step on the {X, Y} net.
StepOperator ammonium_step_matrix(const OscillationParams& p);
Schedule ammonium_schedule(const OscillationParams& p);

// X preparation on the rank-2 net.
Labstate ammonium_initial_state();

struct OscillationProbs {
  double pr_xx;  // still in X after n steps, started in X
  double pr_yx;  // found in Y after n steps, started in X
};

// Closed form at step n: pr_yx = 4|u|^2|v|^2 sin^2(n theta) and pr_xx its
// exact complement (equal to |u|^4 + |v|^4 + 2|u|^2|v|^2 cos(2 n theta) for a
// unit pair, without the rounding that would break pr_xx + pr_yx = 1).
OscillationProbs ammonium_probs_closed(Complex u, Complex v, double theta, int n);

// Stationary-state frequencies of the 2x2 Hamiltonian [[e, f], [conj(f), g]].
std::pair<double, double> sqm_omega_pm(double e, double g, Complex f);

// Continuous two-level reference: probabilities at time t from an X start.
// Matches the discrete closed form when 2 n theta = (omega+ - omega-) t and
// the mixing weights agree.
OscillationProbs sqm_reference_probs(double e, double g, Complex f, double t);

}  // namespace sigq
