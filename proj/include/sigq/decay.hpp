#pragma once

#include <utility>
#include <vector>

#include "sigq/dynamics.hpp"

namespace sigq {

// Single-channel decay: each step an undecayed X either survives (amplitude
// alpha) or fires a fresh detector (amplitude beta); fired detectors are only
// ever null-tested afterwards.
struct DecayParams {
  Complex alpha;
  Complex beta;
  double tau;  // laboratory time per step, seconds

  DecayParams(Complex alpha, Complex beta, double tau);
};

// |alpha| = exp(-Gamma tau / 2), beta real nonnegative.
DecayParams decay_params_from_gamma(double gamma_rate, double tau);
double alpha_from_gamma(double gamma_rate, double tau);

// Operator taking net n-1 to net n (n >= 1). n = 1 is the bare 2x1 column;
// later steps carry the n-1 fired channels through an identity tail. Target
// labels run X, Y<n>, Y<n-1>, ..., Y1: the newest detector sits beside X.
StepOperator decay_step_matrix(int n, const DecayParams& p);
Schedule decay_schedule(const DecayParams& p);

// Rank-1 net holding the undecayed particle.
Labstate decay_initial_state();

// Survival probability |alpha|^(2n).
double decay_survival_closed(const DecayParams& p, int n);

struct Pqr {
  double p_n;    // decayed somewhere in [1, n]
  double q_n;    // survived all of [1, n]
  double r_mn;   // survived to m, decayed in (m, n]
};

// Window probabilities for 0 <= m < n. p_n + q_n is exactly 1 by construction.
Pqr pqr(const DecayParams& p, int m, int n);

// Survival (1 - gamma (t/n)^2)^n for each mesh in n_list at fixed total time.
// Quadratic small-step regime: refining the mesh pushes survival toward 1.
std::vector<std::pair<int, double>> zeno_sweep(double gamma, double t,
                                               const std::vector<int>& n_list);

}  // namespace sigq
