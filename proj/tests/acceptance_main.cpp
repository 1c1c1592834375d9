// Acceptance gate: nine scenario-level checks, one pass/fail line each.
// Usage: sigq_acceptance <path-to-cli-binary>

#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "sigq/config.hpp"
#include "sigq/decay.hpp"
#include "sigq/dynamics.hpp"
#include "sigq/kaon.hpp"
#include "sigq/linalg.hpp"
#include "sigq/oscillation.hpp"
#include "sigq/rng.hpp"
#include "sigq/runner.hpp"
#include "sigq/signal.hpp"

using sigq::Complex;

namespace {

struct Criterion {
  const char* name;
  double budget_seconds;  // 0: no budget stated
  bool (*check)(std::string& detail);
};

std::string g_cli_path;

// ---------------------------------------------------------------- criterion 1

bool semi_unitarity(std::string& detail) {
  const std::array<std::pair<std::size_t, std::size_t>, 8> shapes = {
      {{1, 1}, {2, 1}, {3, 2}, {4, 4}, {8, 5}, {16, 16}, {32, 7}, {64, 32}}};

  double worst_validate = 0.0, worst_pair = 0.0, worst_trace = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto [rows, cols] = shapes[static_cast<std::size_t>(i) % shapes.size()];
    const sigq::SemiUnitaryMatrix m =
        sigq::random_semi_unitary(rows, cols, static_cast<std::uint64_t>(9000 + i));

    const auto rep = sigq::validate_semi_unitary(m.matrix(), 1e-12);
    worst_validate = std::max(worst_validate, rep.max_deviation);
    if (!rep.pass) {
      detail = "validate failed at seed " + std::to_string(9000 + i);
      return false;
    }

    // trace(I - M M+) must equal rows - cols.
    const auto& mm = m.matrix();
    double tr = 0.0;
    for (std::size_t r = 0; r < rows; ++r) {
      Complex diag{0.0, 0.0};
      for (std::size_t k = 0; k < cols; ++k) diag += mm.at(r, k) * std::conj(mm.at(r, k));
      tr += 1.0 - diag.real();
    }
    const double expect = static_cast<double>(rows) - static_cast<double>(cols);
    worst_trace = std::max(worst_trace, std::abs(tr - expect));
    if (std::abs(tr - expect) > 1e-10) {
      detail = "trace residual " + std::to_string(std::abs(tr - expect));
      return false;
    }

    // Compose with a compatible partner and re-validate at the pair tolerance.
    const sigq::SemiUnitaryMatrix head =
        sigq::random_semi_unitary(rows + 3, rows, static_cast<std::uint64_t>(70000 + i));
    const sigq::SemiUnitaryMatrix pair = sigq::compose(head, m);
    const auto prep = sigq::validate_semi_unitary(pair.matrix(), 2e-12);
    worst_pair = std::max(worst_pair, prep.max_deviation);
    if (!prep.pass) {
      detail = "composed pair failed at seed " + std::to_string(9000 + i);
      return false;
    }
  }
  std::ostringstream os;
  os << "1000 matrices; worst deviation " << worst_validate << ", composed " << worst_pair
     << ", trace " << worst_trace;
  detail = os.str();
  return true;
}

// ---------------------------------------------------------------- criterion 2

sigq::Labstate random_sparse_state(std::size_t rank, sigq::SeededRng& rng) {
  const std::size_t dim = std::size_t{1} << rank;
  std::map<sigq::BasisSignal, Complex> amps;
  const int terms = 1 + static_cast<int>(rng.raw() % 12);
  for (int t = 0; t < terms; ++t)
    amps[sigq::BasisSignal::from_index(rank, rng.raw() % dim)] = rng.complex_gaussian();
  double norm = 0.0;
  for (const auto& [k, a] : amps) norm += std::norm(a);
  norm = std::sqrt(norm);
  for (auto& [k, a] : amps) a /= norm;
  std::vector<std::string> labels;
  for (std::size_t s = 0; s < rank; ++s) labels.push_back("Q" + std::to_string(s));
  return sigq::Labstate(sigq::HeisenbergNet(0, labels), std::move(amps));
}

bool same_structure(const sigq::Labstate& a, const sigq::Labstate& b, double tol,
                    bool& structure_ok, double& worst_amp) {
  const auto& am = a.amplitudes();
  const auto& bm = b.amplitudes();
  if (am.size() != bm.size()) {
    structure_ok = false;
    return false;
  }
  auto ia = am.begin();
  auto ib = bm.begin();
  for (; ia != am.end(); ++ia, ++ib) {
    if (!(ia->first == ib->first)) {
      structure_ok = false;
      return false;
    }
    worst_amp = std::max(worst_amp, std::abs(ia->second - ib->second));
  }
  return worst_amp <= tol;
}

bool signal_algebra(std::string& detail) {
  sigq::SeededRng rng(271828);
  double worst = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t rank = 1 + (rng.raw() % 14);
    const sigq::Labstate s = random_sparse_state(rank, rng);
    const std::size_t i = rng.raw() % rank;
    std::size_t j = rng.raw() % rank;
    if (rank > 1)
      while (j == i) j = rng.raw() % rank;

    // Nilpotency: creating twice on the same slot annihilates everything.
    const sigq::Labstate twice = apply_create(i, apply_create(i, s));
    if (!twice.amplitudes().empty()) {
      detail = "nilpotency violated at trial " + std::to_string(trial);
      return false;
    }

    if (rank > 1) {
      // Pairwise commutation: identical sparsity, identical amplitudes.
      const sigq::Labstate ij = apply_create(i, apply_create(j, s));
      const sigq::Labstate ji = apply_create(j, apply_create(i, s));
      bool structure_ok = true;
      if (!same_structure(ij, ji, 1e-15, structure_ok, worst)) {
        detail = structure_ok ? "commutator amplitude drift at trial " + std::to_string(trial)
                              : "commutator sparsity mismatch at trial " + std::to_string(trial);
        return false;
      }
    }

    // Anticommutator identity on one slot: A_i A+_i + A+_i A_i = 1 on the
    // signal-free/occupied split of any state.
    const sigq::Labstate lower_raise = sigq::apply_annihilate(i, sigq::apply_create(i, s));
    const sigq::Labstate raise_lower = sigq::apply_create(i, sigq::apply_annihilate(i, s));
    std::map<sigq::BasisSignal, Complex> sum;
    for (const auto& [k, a] : lower_raise.amplitudes()) sum[k] += a;
    for (const auto& [k, a] : raise_lower.amplitudes()) sum[k] += a;
    const auto& orig = s.amplitudes();
    if (sum.size() != orig.size()) {
      detail = "anticommutator sparsity mismatch at trial " + std::to_string(trial);
      return false;
    }
    auto it = orig.begin();
    for (const auto& [k, a] : sum) {
      if (!(k == it->first) || std::abs(a - it->second) > 1e-15) {
        detail = "anticommutator identity failed at trial " + std::to_string(trial);
        return false;
      }
      ++it;
    }
  }
  std::ostringstream os;
  os << "500 states, ranks 1-14; worst amplitude gap " << worst;
  detail = os.str();
  return true;
}

// ---------------------------------------------------------------- criterion 3

bool decay_equivalence(std::string& detail) {
  sigq::SeededRng rng(333);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const double q = 0.05 + 0.9 * rng.uniform();
    const Complex alpha = std::polar(std::sqrt(q), 2.0 * rng.uniform() - 1.0);
    const Complex beta = std::polar(std::sqrt(1.0 - q), 2.0 * rng.uniform() - 1.0);
    const sigq::DecayParams p(alpha, beta, 1.0);

    // Closed-form powers of alpha for the whole horizon.
    std::vector<Complex> apow(1001);
    apow[0] = Complex{1.0, 0.0};
    for (int k = 1; k <= 1000; ++k) apow[k] = apow[k - 1] * alpha;

    std::vector<Complex> amps = {Complex{1.0, 0.0}};
    double worst_amp_sq = 0.0;  // squared gaps, so the hot loop skips the sqrt
    for (int n = 1; n <= 1000; ++n) {
      amps = sigq::step(amps, sigq::decay_step_matrix(n, p));

      // Survival against |alpha|^(2n).
      const double closed = sigq::decay_survival_closed(p, n);
      worst = std::max(worst, std::abs(std::norm(amps[0]) - closed));

      // Full column form (alpha^n, beta alpha^(n-1), ..., beta).
      worst_amp_sq = std::max(worst_amp_sq, std::norm(amps[0] - apow[n]));
      for (int k = 1; k <= n; ++k)
        worst_amp_sq = std::max(worst_amp_sq, std::norm(amps[static_cast<std::size_t>(k)] -
                                                        beta * apow[n - k]));

      // Total probability.
      double total = 0.0;
      for (const auto& a : amps) total += std::norm(a);
      worst = std::max(worst, std::abs(total - 1.0));

      if (worst > 1e-10 || worst_amp_sq > 1e-20) {
        detail = "trial " + std::to_string(trial) + " step " + std::to_string(n) +
                 " deviation " + std::to_string(std::max(worst, std::sqrt(worst_amp_sq)));
        return false;
      }
    }
    worst = std::max(worst, std::sqrt(worst_amp_sq));
  }
  std::ostringstream os;
  os << "100 trajectories to n=1000; worst deviation " << worst;
  detail = os.str();
  return true;
}

// ---------------------------------------------------------------- criterion 4

bool pqr_identities(std::string& detail) {
  sigq::SeededRng rng(444);
  double worst_r = 0.0, worst_tel = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const double q = 0.02 + 0.96 * rng.uniform();
    const sigq::DecayParams p(Complex{std::sqrt(q), 0.0},
                              Complex{0.0, std::sqrt(1.0 - q)}, 1.0);
    for (int n = 1; n <= 50; ++n) {
      for (int m = 0; m < n; ++m) {
        const auto v = sigq::pqr(p, m, n);
        if (v.p_n + v.q_n != 1.0) {
          detail = "P+Q != 1 exactly at q=" + std::to_string(q);
          return false;
        }
        // R(m, n) = Q_m P_{n-m}, each factor taken from its own call.
        const double qm = (m == 0) ? 1.0 : sigq::pqr(p, 0, m).q_n;
        const double pnm = sigq::pqr(p, 0, n - m).p_n;
        worst_r = std::max(worst_r, std::abs(v.r_mn - qm * pnm));
      }
      double total = sigq::pqr(p, 0, n).q_n;
      for (int m = 0; m < n; ++m) total += sigq::pqr(p, m, m + 1).r_mn;
      worst_tel = std::max(worst_tel, std::abs(total - 1.0));
    }
  }
  if (worst_r > 1e-12) {
    detail = "R factorization deviation " + std::to_string(worst_r);
    return false;
  }
  if (worst_tel > 1e-10) {
    detail = "telescoping deviation " + std::to_string(worst_tel);
    return false;
  }
  std::ostringstream os;
  os << "100 alphas, all 0 <= m < n <= 50; worst R " << worst_r << ", telescope " << worst_tel;
  detail = os.str();
  return true;
}

// ---------------------------------------------------------------- criterion 5

bool regime_dichotomy(std::string& detail) {
  // Exponential calibration: survival at t = 1 is mesh-independent.
  const double target = 0.36787944117144233;  // e^-1
  for (int n : {1, 10, 100, 1000}) {
    const double tau = 1.0 / static_cast<double>(n);
    const sigq::DecayParams p = sigq::decay_params_from_gamma(1.0, tau);
    const double s = sigq::decay_survival_closed(p, n);
    if (std::abs(s - target) > 1e-10) {
      detail = "exponential mesh n=" + std::to_string(n) + " survival " + std::to_string(s);
      return false;
    }
  }

  // Quadratic regime: survival climbs toward 1 as the mesh refines.
  const std::vector<int> meshes = {2, 5, 10, 50, 100, 500, 1000};
  const auto sweep = sigq::zeno_sweep(1.0, 1.0, meshes);
  for (std::size_t i = 1; i < sweep.size(); ++i) {
    if (!(sweep[i].second > sweep[i - 1].second)) {
      detail = "survival not strictly increasing at n=" + std::to_string(sweep[i].first);
      return false;
    }
  }
  const double last = sweep.back().second;
  if (!(last >= 0.998)) {
    detail = "survival at n=1000 is " + std::to_string(last);
    return false;
  }
  std::ostringstream os;
  os << "e^-1 on four meshes; quadratic survival reaches " << last << " at n=1000";
  detail = os.str();
  return true;
}

// ---------------------------------------------------------------- criterion 6

bool ammonium_suite(std::string& detail) {
  sigq::SeededRng rng(666);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const double mix = 0.03 + 0.47 * rng.uniform();
    const Complex a = std::polar(std::cos(mix), 2.0 * rng.uniform() - 1.0);
    const Complex b = std::polar(std::sin(mix), 2.0 * rng.uniform() - 1.0);
    const sigq::OscillationParams p(a, b);
    const auto& uv = p.uv();

    // V-decomposition reconstructs the step matrix.
    const Complex z = std::polar(1.0, uv.theta);
    const auto m = sigq::ammonium_step_matrix(p).full_matrix();
    const std::array<std::array<Complex, 2>, 2> vmat = {
        {{uv.u, -std::conj(uv.v)}, {uv.v, std::conj(uv.u)}}};
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t cidx = 0; cidx < 2; ++cidx) {
        Complex rebuilt{0.0, 0.0};
        for (std::size_t k = 0; k < 2; ++k)
          rebuilt += vmat[r][k] * ((k == 0) ? z : std::conj(z)) * std::conj(vmat[cidx][k]);
        if (std::abs(rebuilt - m.at(r, cidx)) > 1e-10) {
          detail = "V decomposition residual at trial " + std::to_string(trial);
          return false;
        }
      }

    // Closed form against matrix powers, checked at every step to n = 1e4.
    const sigq::StepOperator op = sigq::ammonium_step_matrix(p);
    std::vector<Complex> amps = {Complex{1.0, 0.0}, Complex{0.0, 0.0}};
    for (int n = 1; n <= 10000; ++n) {
      amps = sigq::step(amps, op);
      const auto probs = sigq::ammonium_probs_closed(uv.u, uv.v, uv.theta, n);
      if (probs.pr_xx + probs.pr_yx != 1.0) {
        detail = "PrXX + PrYX != 1 exactly at trial " + std::to_string(trial);
        return false;
      }
      worst = std::max(worst, std::abs(std::norm(amps[0]) - probs.pr_xx));
      worst = std::max(worst, std::abs(std::norm(amps[1]) - probs.pr_yx));
      if (worst > 1e-10) {
        detail = "closed vs stepped deviation " + std::to_string(worst) + " at step " +
                 std::to_string(n);
        return false;
      }
    }
  }

  // Small-angle expansion at n theta = 1e-3.
  {
    const double theta = 1e-6;
    const int n = 1000;
    const sigq::OscillationParams p(Complex{std::cos(theta), 0.0},
                                    Complex{0.0, std::sin(theta)});
    const auto& uv = p.uv();
    const double pq = std::norm(uv.u) * std::norm(uv.v);
    const auto probs = sigq::ammonium_probs_closed(uv.u, uv.v, uv.theta, n);
    const double nt = static_cast<double>(n) * uv.theta;
    const double approx_yx = 4.0 * pq * nt * nt;
    if (std::abs(probs.pr_yx - approx_yx) / approx_yx > 1e-5 ||
        std::abs(probs.pr_xx - (1.0 - approx_yx)) / (1.0 - approx_yx) > 1e-5) {
      detail = "small-angle expansion out of relative tolerance";
      return false;
    }
  }

  // Matched continuous reference: 2 n theta = (omega+ - omega-) t with t = n.
  sigq::SeededRng rng2(667);
  for (int trial = 0; trial < 50; ++trial) {
    const double mix = 0.03 + 0.47 * rng2.uniform();
    const Complex a = std::polar(std::cos(mix), 2.0 * rng2.uniform() - 1.0);
    const Complex b = std::polar(std::sin(mix), 2.0 * rng2.uniform() - 1.0);
    const auto uv = sigq::uv_theta_from_ab(a, b);
    const double delta = 2.0 * uv.theta;
    const double e = delta * (std::norm(uv.u) - std::norm(uv.v));
    const Complex f = std::polar(std::abs(uv.u) * std::abs(uv.v) * delta, 1.1);
    for (int n : {0, 1, 5, 23, 400}) {
      const auto discrete = sigq::ammonium_probs_closed(uv.u, uv.v, uv.theta, n);
      const auto cont = sigq::sqm_reference_probs(e, 0.0, f, static_cast<double>(n));
      if (std::abs(discrete.pr_yx - cont.pr_yx) > 1e-10 ||
          std::abs(discrete.pr_xx - cont.pr_xx) > 1e-10) {
        detail = "matched reference deviates at trial " + std::to_string(trial);
        return false;
      }
    }
  }

  std::ostringstream os;
  os << "100 pairs stepped to n=10000; worst deviation " << worst;
  detail = os.str();
  return true;
}

// ---------------------------------------------------------------- criterion 7

bool kaon_suite(std::string& detail) {
  const std::array<Complex, 2> x_start = {Complex{1.0, 0.0}, Complex{0.0, 0.0}};
  double worst = 0.0;
  int phase_split_sets = 0, nonmonotonic = 0;

  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const sigq::KaonParams p = sigq::kaon_params_sample(seed);

    // Constraints at 1e-12.
    const double c1 = std::abs(std::norm(p.alpha) + std::norm(p.beta) + std::norm(p.gamma) - 1.0);
    const double c2 = std::abs(std::norm(p.u) + std::norm(p.v) + std::norm(p.w) - 1.0);
    const double ortho =
        std::abs(std::conj(p.alpha) * p.u + std::conj(p.beta) * p.v + std::conj(p.gamma) * p.w);
    if (c1 > 1e-12 || c2 > 1e-12 || ortho > 1e-12) {
      detail = "constraints violated at seed " + std::to_string(seed);
      return false;
    }

    const auto d = sigq::kaon_eigenmodes(p, x_start);
    if (!(std::abs(d.lambda1) < 1.0) || !(std::abs(d.lambda2) < 1.0)) {
      detail = "eigenvalue modulus >= 1 at seed " + std::to_string(seed);
      return false;
    }

    // Closed form against the iterated evolution, all n <= 1000.
    std::vector<Complex> amps = {x_start[0], x_start[1]};
    bool fell = false, rose = false, fell_after_rise = false;
    double prev_y = 0.0;
    for (int n = 1; n <= 1000; ++n) {
      amps = sigq::step(amps, sigq::kaon_step_matrix(n - 1, p));
      const auto closed = sigq::kaon_survival_closed(d, n);
      const double px = std::norm(amps[0]), py = std::norm(amps[1]);
      worst = std::max(worst, std::abs(px - closed.pr_x));
      worst = std::max(worst, std::abs(py - closed.pr_y));

      double total = px + py;
      for (std::size_t i = 2; i < amps.size(); ++i) total += std::norm(amps[i]);
      worst = std::max(worst, std::abs(total - 1.0));
      if (worst > 1e-10) {
        detail = "seed " + std::to_string(seed) + " deviation " + std::to_string(worst) +
                 " at step " + std::to_string(n);
        return false;
      }

      if (py > prev_y + 1e-15) {
        rose = true;
        (void)fell;
      }
      if (rose && py < prev_y - 1e-15) {
        fell_after_rise = true;
        fell = true;
      }
      prev_y = py;
    }

    if (std::abs(std::arg(d.lambda1) - std::arg(d.lambda2)) > 1e-9) {
      ++phase_split_sets;
      if (rose && fell_after_rise) ++nonmonotonic;
    }
  }

  if (phase_split_sets == 0 || nonmonotonic * 100 < phase_split_sets * 95) {
    detail = "regeneration in " + std::to_string(nonmonotonic) + " of " +
             std::to_string(phase_split_sets) + " phase-split sets";
    return false;
  }

  // Exact single-exponential collapse of the intensity benchmark.
  const sigq::IntensityParams flat(1.7, 1.7, 0.0);
  for (double t : {0.0, 0.4, 2.0, 9.0}) {
    const auto v = sigq::intensity_reference(flat, t);
    if (v.first != std::exp(-1.7 * t) || v.second != 0.0) {
      detail = "intensity collapse not exact at t=" + std::to_string(t);
      return false;
    }
  }

  std::ostringstream os;
  os << "200 seeds to n=1000; worst deviation " << worst << "; regeneration " << nonmonotonic
     << "/" << phase_split_sets;
  detail = os.str();
  return true;
}

// ---------------------------------------------------------------- criterion 8

bool oracle_equivalence(std::string& detail) {
  using nlohmann::json;
  const json decay{{"scenario", "decay"},
                   {"parameters", {{"alpha", {0.8, 0.0}}, {"beta", {0.0, 0.6}}}},
                   {"n_steps", 10},
                   {"tau", 1.0},
                   {"output_path", "unused.csv"}};
  const json ammonium{{"scenario", "ammonium"},
                      {"parameters", {{"a", {0.6, 0.0}}, {"b", {0.0, 0.8}}}},
                      {"n_steps", 1000},
                      {"tau", 1.0},
                      {"output_path", "unused.csv"}};
  const json kaon{{"scenario", "kaon"}, {"parameters", json::object()}, {"seed", 31},
                  {"n_steps", 11},     {"tau", 1.0},
                  {"output_path", "unused.csv"}};

  double worst = 0.0;
  for (const auto& [cfg_json, label] :
       {std::pair{decay, "decay"}, std::pair{ammonium, "ammonium"}, std::pair{kaon, "kaon"}}) {
    const auto report = sigq::crosscheck(sigq::config_from_json(cfg_json, "acceptance"));
    worst = std::max(worst, report.max_deviation);
    if (!report.pass || report.max_deviation > 1e-12) {
      detail = std::string(label) + " crosscheck deviation " +
               std::to_string(report.max_deviation);
      return false;
    }
    if (report.truncated_at.has_value()) {
      detail = std::string(label) + " unexpectedly truncated";
      return false;
    }
  }
  std::ostringstream os;
  os << "three scenarios; worst amplitude deviation " << worst;
  detail = os.str();
  return true;
}

// ---------------------------------------------------------------- criterion 9

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int run_cli(const std::string& config_path) {
  const std::string cmd = "\"" + g_cli_path + "\" run " + config_path + " >/dev/null 2>&1";
  const int raw = std::system(cmd.c_str());
  if (raw == -1) return -1;
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

bool cli_regression(std::string& detail) {
  if (g_cli_path.empty()) {
    detail = "no CLI path on the command line";
    return false;
  }

  const std::string out1 = "/tmp/sigq_acceptance_run1.csv";
  const std::string out2 = "/tmp/sigq_acceptance_run2.csv";
  const std::string cfg1 = "/tmp/sigq_acceptance_cfg1.json";
  const std::string cfg2 = "/tmp/sigq_acceptance_cfg2.json";

  nlohmann::json cfg{{"scenario", "decay"},
                     {"parameters", {{"Gamma", 0.35}}},
                     {"n_steps", 64},
                     {"tau", 0.25},
                     {"seed", 20240229},
                     {"output_path", out1}};
  {
    std::ofstream(cfg1) << cfg.dump();
    cfg["output_path"] = out2;
    std::ofstream(cfg2) << cfg.dump();
  }

  if (run_cli(cfg1) != 0 || run_cli(cfg2) != 0) {
    detail = "CLI run did not exit 0";
    return false;
  }
  const std::string body1 = read_file(out1);
  const std::string body2 = read_file(out2);
  std::remove(out1.c_str());
  std::remove(out2.c_str());
  std::remove(cfg1.c_str());
  std::remove(cfg2.c_str());
  if (body1.empty() || body1 != body2) {
    detail = "CSV bodies differ between identical runs";
    return false;
  }

  // Corrupted step matrix: conservation breach must exit with code 2.
  const std::string foutp = "/tmp/sigq_acceptance_fault.csv";
  const std::string fcfg = "/tmp/sigq_acceptance_fault.json";
  nlohmann::json faulty{{"scenario", "decay"},
                        {"parameters", {{"Gamma", 0.35}}},
                        {"n_steps", 16},
                        {"tau", 0.25},
                        {"output_path", foutp},
                        {"inject_fault", {{"step", 5}, {"scale", 4.0}}}};
  std::ofstream(fcfg) << faulty.dump();
  const int code = run_cli(fcfg);
  std::remove(fcfg.c_str());
  std::remove(foutp.c_str());
  if (code != 2) {
    detail = "fault-injected run exited " + std::to_string(code) + ", wanted 2";
    return false;
  }

  detail = std::to_string(body1.size()) + " bytes, stable across runs; fault exits 2";
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) g_cli_path = argv[1];

  const std::array<Criterion, 9> criteria = {{
      {"semi-unitarity", 5.0, semi_unitarity},
      {"signal algebra", 5.0, signal_algebra},
      {"decay equivalence", 10.0, decay_equivalence},
      {"window identities", 0.0, pqr_identities},
      {"regime dichotomy", 2.0, regime_dichotomy},
      {"two-state oscillation", 10.0, ammonium_suite},
      {"coupled-channel decay", 30.0, kaon_suite},
      {"dense-oracle equivalence", 10.0, oracle_equivalence},
      {"CLI regression", 0.0, cli_regression},
  }};

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& c = criteria[i];
    std::string detail;
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = c.check(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (ok && c.budget_seconds > 0.0 && secs > c.budget_seconds) {
      ok = false;
      detail += " [over the " + std::to_string(c.budget_seconds) + "s budget]";
    }
    if (!ok) ++failures;
    std::printf("%s criterion %zu (%s): %s [%.2fs]\n", ok ? "PASS" : "FAIL", i + 1, c.name,
                detail.c_str(), secs);
  }
  return failures == 0 ? 0 : 1;
}
