#include "sigq/oscillation.hpp"

#include <cmath>
#include <string>

namespace sigq {

UvTheta uv_theta_from_ab(Complex a, Complex b) {
  const double dev = std::abs(std::norm(a) + std::norm(b) - 1.0);
  if (!(dev <= kParamTol))
    throw ValidationError("oscillation params: |a|^2 + |b|^2 deviates from 1 by " +
                          std::to_string(dev));
  const double re_a = a.real();
  if (std::abs(re_a) >= 1.0 - 1e-14)
    throw DegenerateOscillationError(
        "oscillation params with |Re a| = 1 have a single mode; no two-mode dynamics exist");
  const double theta = std::acos(re_a);
  const double sin_theta = std::sqrt(1.0 - re_a * re_a);

  // Eigenvector of [[a, -conj(b)], [b, conj(a)]] for e^{+i theta}. Both rows of
  // (U - e^{i theta} I) annihilate either candidate; keep the larger.
  const Complex z_plus{re_a, sin_theta};
  const std::array<Complex, 2> c1 = {z_plus - std::conj(a), b};
  const std::array<Complex, 2> c2 = {std::conj(b), a - z_plus};
  const double n1 = std::sqrt(std::norm(c1[0]) + std::norm(c1[1]));
  const double n2 = std::sqrt(std::norm(c2[0]) + std::norm(c2[1]));
  std::array<Complex, 2> vec = (n1 >= n2) ? c1 : c2;
  const double n = std::max(n1, n2);
  vec[0] /= n;
  vec[1] /= n;

  // Phase convention: u real nonnegative; if u vanishes, v real positive.
  if (std::abs(vec[0]) > 1e-12) {
    const double mag = std::abs(vec[0]);
    const Complex ph = std::conj(vec[0]) / mag;
    vec[1] *= ph;
    vec[0] = Complex{mag, 0.0};
  } else {
    const double mag = std::abs(vec[1]);
    const Complex ph = std::conj(vec[1]) / mag;
    vec[0] *= ph;
    vec[1] = Complex{mag, 0.0};
  }
  return UvTheta{vec[0], vec[1], theta};
}

OscillationParams::OscillationParams(Complex a, Complex b) : a_(a), b_(b) {
  const double dev = std::abs(std::norm(a_) + std::norm(b_) - 1.0);
  if (!(dev <= kParamTol))
    throw ValidationError("oscillation params: |a|^2 + |b|^2 deviates from 1 by " +
                          std::to_string(dev));
  try {
    uv_ = uv_theta_from_ab(a_, b_);
  } catch (const DegenerateOscillationError&) {
    uv_.reset();  // step dynamics stay valid; the mode decomposition does not exist
  }
}

const UvTheta& OscillationParams::uv() const {
  if (!uv_)
    throw DegenerateOscillationError(
        "oscillation params with |Re a| = 1 have no mode decomposition");
  return *uv_;
}

StepOperator ammonium_step_matrix(const OscillationParams& p) {
  ComplexMatrix m(2, 2);
  m.at(0, 0) = p.a();
  m.at(0, 1) = -std::conj(p.b());
  m.at(1, 0) = p.b();
  m.at(1, 1) = std::conj(p.a());
  return StepOperator(SemiUnitaryMatrix(std::move(m)), 0, {"X", "Y"}, {"X", "Y"});
}

Schedule ammonium_schedule(const OscillationParams& p) {
  const StepOperator op = ammonium_step_matrix(p);
  return [op](int) { return op; };
}

Labstate ammonium_initial_state() {
  return apply_create(0, void_state(HeisenbergNet(0, {"X", "Y"})));
}

OscillationProbs ammonium_probs_closed(Complex u, Complex v, double theta, int n) {
  if (n < 0) throw ArgumentError("ammonium_probs_closed: n must be nonnegative");
  const double dev = std::abs(std::norm(u) + std::norm(v) - 1.0);
  if (!(dev <= kParamTol))
    throw ValidationError("ammonium_probs_closed: |u|^2 + |v|^2 deviates from 1 by " +
                          std::to_string(dev));
  const double pq = std::norm(u) * std::norm(v);
  const double s = std::sin(static_cast<double>(n) * theta);
  OscillationProbs out;
  out.pr_yx = 4.0 * pq * s * s;
  out.pr_xx = 1.0 - out.pr_yx;
  return out;
}

std::pair<double, double> sqm_omega_pm(double e, double g, Complex f) {
  const double root = std::sqrt(4.0 * std::norm(f) + (e - g) * (e - g));
  return {0.5 * (e + g + root), 0.5 * (e + g - root)};
}

OscillationProbs sqm_reference_probs(double e, double g, Complex f, double t) {
  const auto [wp, wm] = sqm_omega_pm(e, g, f);
  const double delta = wp - wm;
  OscillationProbs out;
  if (delta == 0.0) {
    out.pr_xx = 1.0;  // no splitting, no transition
    out.pr_yx = 0.0;
    return out;
  }
  const double weight = 4.0 * std::norm(f) / (delta * delta);
  const double s = std::sin(0.5 * delta * t);
  out.pr_yx = weight * s * s;
  out.pr_xx = 1.0 - out.pr_yx;
  return out;
}

}  // namespace sigq
