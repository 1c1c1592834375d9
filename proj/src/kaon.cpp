#include "sigq/kaon.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace sigq {

namespace {

std::vector<std::string> kaon_labels(int n) {
  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(n) + 2);
  labels.emplace_back("X");
  labels.emplace_back("Y");
  for (int k = n; k >= 1; --k) labels.emplace_back("Z" + std::to_string(k));
  return labels;
}

}  // namespace

KaonParams::KaonParams(Complex alpha_in, Complex beta_in, Complex gamma_in, Complex u_in,
                       Complex v_in, Complex w_in)
    : alpha(alpha_in), beta(beta_in), gamma(gamma_in), u(u_in), v(v_in), w(w_in) {
  std::vector<std::string> issues;
  const double n1 = std::abs(std::norm(alpha) + std::norm(beta) + std::norm(gamma) - 1.0);
  if (!(n1 <= kParamTol))
    issues.push_back("|alpha|^2 + |beta|^2 + |gamma|^2 deviates from 1 by " + std::to_string(n1));
  const double n2 = std::abs(std::norm(u) + std::norm(v) + std::norm(w) - 1.0);
  if (!(n2 <= kParamTol))
    issues.push_back("|u|^2 + |v|^2 + |w|^2 deviates from 1 by " + std::to_string(n2));
  const double ortho =
      std::abs(std::conj(alpha) * u + std::conj(beta) * v + std::conj(gamma) * w);
  if (!(ortho <= kParamTol))
    issues.push_back("columns are not orthogonal: |<col1, col2>| = " + std::to_string(ortho));
  if (!issues.empty()) {
    std::string msg = "kaon params invalid:";
    for (const auto& s : issues) msg += " " + s + ";";
    throw ValidationError(msg);
  }
}

KaonParams kaon_params_sample(std::uint64_t seed) {
  const SemiUnitaryMatrix cols = random_semi_unitary(3, 2, seed);
  const ComplexMatrix& m = cols.matrix();
  return KaonParams(m.at(0, 0), m.at(1, 0), m.at(2, 0), m.at(0, 1), m.at(1, 1), m.at(2, 1));
}

StepOperator kaon_step_matrix(int n, const KaonParams& p) {
  if (n < 0) throw ArgumentError("kaon step index must be >= 0, got " + std::to_string(n));
  ComplexMatrix block(3, 2);
  block.at(0, 0) = p.alpha;
  block.at(0, 1) = p.u;
  block.at(1, 0) = p.beta;
  block.at(1, 1) = p.v;
  block.at(2, 0) = p.gamma;
  block.at(2, 1) = p.w;
  // Labels are X, Y plus distinct channel indices, unique by construction.
  return detail::step_operator_unchecked(SemiUnitaryMatrix(std::move(block)),
                                         static_cast<std::size_t>(n), kaon_labels(n),
                                         kaon_labels(n + 1));
}

Schedule kaon_schedule(const KaonParams& p) {
  // Schedule steps are 1-based; step k applies the operator leaving net k-1.
  return [p](int k) { return kaon_step_matrix(k - 1, p); };
}

Labstate kaon_initial_state(Complex a, Complex b) {
  if (std::abs(std::norm(a) + std::norm(b) - 1.0) > kStateNormTol)
    throw ValidationError("kaon initial state must be normalized");
  const HeisenbergNet net(0, {"X", "Y"});
  const Labstate vac = void_state(net);
  return combine(a, apply_create(0, vac), b, apply_create(1, vac));
}

EigenmodeDecomposition kaon_eigenmodes(const KaonParams& p, const std::array<Complex, 2>& psi0) {
  ComplexMatrix m(2, 2);
  m.at(0, 0) = p.alpha;
  m.at(0, 1) = p.u;
  m.at(1, 0) = p.beta;
  m.at(1, 1) = p.v;
  const Eigenpair2 eig = eig2(m);  // throws DegenerateMatrixError when defective

  if (std::abs(eig.lambda1 - eig.lambda2) <= 1e-12 * std::max(1.0, std::abs(eig.lambda1)))
    throw DegenerateMatrixError("kaon eigenmodes: repeated eigenvalue, no mode expansion",
                                eig.lambda1);
  const double cap = 1.0 + kParamTol;
  if (std::abs(eig.lambda1) > cap || std::abs(eig.lambda2) > cap)
    throw ValidationError("kaon eigenmodes: eigenvalue modulus exceeds 1");

  EigenmodeDecomposition d;
  d.lambda1 = eig.lambda1;
  d.lambda2 = eig.lambda2;
  d.mode1 = eig.vec1;
  d.mode2 = eig.vec2;

  // Solve [mode1 mode2] (mu1, mu2)^T = psi0 by Cramer's rule.
  const Complex det = d.mode1[0] * d.mode2[1] - d.mode2[0] * d.mode1[1];
  d.mu1 = (psi0[0] * d.mode2[1] - psi0[1] * d.mode2[0]) / det;
  d.mu2 = (d.mode1[0] * psi0[1] - d.mode1[1] * psi0[0]) / det;

  const Complex r0 = d.mu1 * d.mode1[0] + d.mu2 * d.mode2[0] - psi0[0];
  const Complex r1 = d.mu1 * d.mode1[1] + d.mu2 * d.mode2[1] - psi0[1];
  const double residual = std::sqrt(std::norm(r0) + std::norm(r1));
  if (residual > 1e-10)
    throw NumericIntegrityError("kaon eigenmodes: reconstruction residual " +
                                    std::to_string(residual),
                                0, residual);
  return d;
}

KaonSurvival kaon_survival_closed(const EigenmodeDecomposition& d, int n) {
  if (n < 0) throw ArgumentError("kaon_survival_closed: n must be nonnegative");
  const double r1 = std::abs(d.lambda1), r2 = std::abs(d.lambda2);
  const double th1 = std::arg(d.lambda1), th2 = std::arg(d.lambda2);
  const double nn = static_cast<double>(n);
  const double r1_2n = std::pow(r1, 2.0 * nn);
  const double r2_2n = std::pow(r2, 2.0 * nn);
  const double cross_mag = 2.0 * std::pow(r1, nn) * std::pow(r2, nn);
  const Complex phase = std::polar(1.0, -nn * (th1 - th2));

  auto channel = [&](const Complex& c1, const Complex& c2) {
    return std::norm(d.mu1) * std::norm(c1) * r1_2n + std::norm(d.mu2) * std::norm(c2) * r2_2n +
           cross_mag * std::real(std::conj(d.mu1 * c1) * (d.mu2 * c2) * phase);
  };
  return KaonSurvival{channel(d.mode1[0], d.mode2[0]), channel(d.mode1[1], d.mode2[1])};
}

IntensityParams::IntensityParams(double g1, double g2, double dm)
    : gamma1(g1), gamma2(g2), delta_m_term(dm) {
  if (gamma1 < 0.0 || gamma2 < 0.0)
    throw ValidationError("intensity params: decay rates must be nonnegative");
}

std::pair<double, double> intensity_reference(const IntensityParams& ip, double t) {
  if (t < 0.0) throw ArgumentError("intensity_reference: t must be nonnegative");
  const double e1 = std::exp(-ip.gamma1 * t);
  const double e2 = std::exp(-ip.gamma2 * t);
  const double cross = 2.0 * std::exp(-0.5 * (ip.gamma1 + ip.gamma2) * t) *
                       std::cos(ip.delta_m_term * t);
  return {0.25 * (e1 + e2 + cross), 0.25 * (e1 + e2 - cross)};
}

}  // namespace sigq
