#include "sigq/decay.hpp"

#include <cmath>
#include <string>

namespace sigq {

namespace {

std::vector<std::string> decay_labels(int n) {
  // Net after n steps: X plus one fired channel per elapsed step, newest first.
  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(n) + 1);
  labels.emplace_back("X");
  for (int k = n; k >= 1; --k) labels.emplace_back("Y" + std::to_string(k));
  return labels;
}

}  // namespace

DecayParams::DecayParams(Complex alpha_in, Complex beta_in, double tau_in)
    : alpha(alpha_in), beta(beta_in), tau(tau_in) {
  const double dev = std::abs(std::norm(alpha) + std::norm(beta) - 1.0);
  if (!(dev <= kParamTol))
    throw ValidationError("decay params: |alpha|^2 + |beta|^2 deviates from 1 by " +
                          std::to_string(dev));
  if (!(tau > 0.0)) throw ArgumentError("decay params: tau must be positive");
}

double alpha_from_gamma(double gamma_rate, double tau) {
  if (!(tau > 0.0)) throw ArgumentError("alpha_from_gamma: tau must be positive");
  if (gamma_rate < 0.0) throw ArgumentError("alpha_from_gamma: decay rate must be nonnegative");
  return std::exp(-0.5 * gamma_rate * tau);
}

DecayParams decay_params_from_gamma(double gamma_rate, double tau) {
  const double a = alpha_from_gamma(gamma_rate, tau);
  const double b = std::sqrt(1.0 - a * a);
  return DecayParams(Complex{a, 0.0}, Complex{b, 0.0}, tau);
}

StepOperator decay_step_matrix(int n, const DecayParams& p) {
  if (n < 1) throw ArgumentError("decay step index must be >= 1, got " + std::to_string(n));
  ComplexMatrix column(2, 1);
  column.at(0, 0) = p.alpha;
  column.at(1, 0) = p.beta;
  // Labels are X plus distinct channel indices, unique by construction.
  return detail::step_operator_unchecked(SemiUnitaryMatrix(std::move(column)),
                                         static_cast<std::size_t>(n - 1), decay_labels(n - 1),
                                         decay_labels(n));
}

Schedule decay_schedule(const DecayParams& p) {
  return [p](int n) { return decay_step_matrix(n, p); };
}

Labstate decay_initial_state() {
  return apply_create(0, void_state(HeisenbergNet(0, {"X"})));
}

double decay_survival_closed(const DecayParams& p, int n) {
  if (n < 0) throw ArgumentError("survival: n must be nonnegative");
  return std::pow(std::norm(p.alpha), static_cast<double>(n));
}

Pqr pqr(const DecayParams& p, int m, int n) {
  if (m < 0 || m >= n)
    throw ArgumentError("pqr requires 0 <= m < n, got m=" + std::to_string(m) +
                        " n=" + std::to_string(n));
  const double q = std::norm(p.alpha);
  Pqr out;
  out.q_n = std::pow(q, static_cast<double>(n));
  out.p_n = 1.0 - out.q_n;  // the complement, so the pair sums to 1 exactly
  out.r_mn = std::pow(q, static_cast<double>(m)) * (1.0 - std::pow(q, static_cast<double>(n - m)));
  return out;
}

std::vector<std::pair<int, double>> zeno_sweep(double gamma, double t,
                                               const std::vector<int>& n_list) {
  if (!(gamma > 0.0)) throw ArgumentError("zeno_sweep: gamma must be positive");
  if (!(t > 0.0)) throw ArgumentError("zeno_sweep: total time must be positive");
  std::vector<std::pair<int, double>> out;
  out.reserve(n_list.size());
  for (const int n : n_list) {
    if (n < 1) throw ArgumentError("zeno_sweep: mesh counts must be >= 1");
    const double tau = t / static_cast<double>(n);
    const double x = gamma * tau * tau;
    if (!(x < 1.0))
      throw ArgumentError("zeno_sweep: gamma (t/n)^2 = " + std::to_string(x) +
                          " >= 1 at n = " + std::to_string(n) +
                          "; the quadratic regime needs a finer mesh");
    out.emplace_back(n, std::pow(1.0 - x, static_cast<double>(n)));
  }
  return out;
}

}  // namespace sigq
