#pragma once

#include <array>
#include <cstdint>
#include <utility>

#include "sigq/dynamics.hpp"

namespace sigq {

// Two coupled channels X, Y feeding one fresh decay detector per step:
// column (alpha, beta, gamma) receives X, column (u, v, w) receives Y.
struct KaonParams {
  Complex alpha, beta, gamma;
  Complex u, v, w;

  KaonParams(Complex alpha, Complex beta, Complex gamma, Complex u, Complex v, Complex w);
};

// First two columns of a seeded random 3x3 unitary (Gaussian draw followed by
// Gram-Schmidt), so the constraints hold to rounding by construction.
KaonParams kaon_params_sample(std::uint64_t seed);

// Operator taking net n to net n+1 (n >= 0). n = 0 is the bare 3x2 block;
// later steps carry the n fired channels through an identity tail. Target
// labels run X, Y, Z<n+1>, ..., Z1.
StepOperator kaon_step_matrix(int n, const KaonParams& p);
Schedule kaon_schedule(const KaonParams& p);

// a X + b Y superposition on the rank-2 net; (1, 0) is a pure X start.
Labstate kaon_initial_state(Complex a, Complex b);

// Eigenmodes of the non-unitary surviving-sector map M = [[alpha, u], [beta, v]].
// Each mode decays geometrically at its own rate |lambda_i| < 1 while the two
// interfere through the phase difference, which is what regenerates a channel
// that had emptied out.
struct EigenmodeDecomposition {
  Complex lambda1, lambda2;          // |lambda1| >= |lambda2|
  std::array<Complex, 2> mode1, mode2;
  Complex mu1, mu2;                  // initial state = mu1 mode1 + mu2 mode2
};

EigenmodeDecomposition kaon_eigenmodes(const KaonParams& p, const std::array<Complex, 2>& psi0);

struct KaonSurvival {
  double pr_x;
  double pr_y;
};

// Channel probabilities after n steps from the mode expansion:
//   |mu1 c1|^2 r1^(2n) + |mu2 c2|^2 r2^(2n)
//   + 2 r1^n r2^n Re{ conj(mu1 c1) mu2 c2 e^{-i n (theta1 - theta2)} }
// with c the X or Y components of the modes.
KaonSurvival kaon_survival_closed(const EigenmodeDecomposition& d, int n);

// Two-lifetime interference benchmark for a pure X start.
struct IntensityParams {
  double gamma1;        // fast mode decay rate
  double gamma2;        // slow mode decay rate
  double delta_m_term;  // oscillation angular frequency

  IntensityParams(double gamma1, double gamma2, double delta_m_term);
};

// I_X(t) = (e^{-G1 t} + e^{-G2 t} + 2 e^{-(G1+G2)t/2} cos(dm t)) / 4 and the
// same with the cosine negated for I_Y(t).
std::pair<double, double> intensity_reference(const IntensityParams& ip, double t);

}  // namespace sigq
