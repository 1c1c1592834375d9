#include "sigq/runner.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <utility>
#include <variant>

#include "sigq/decay.hpp"
#include "sigq/kaon.hpp"
#include "sigq/oscillation.hpp"
#include "sigq/signal.hpp"

namespace sigq {

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

Schedule with_fault(Schedule inner, const FaultInjection& fault) {
  return [inner = std::move(inner), fault](int k) {
    StepOperator op = inner(k);
    if (k != fault.step) return op;
    const ComplexMatrix& m = op.block().matrix();
    ComplexMatrix scaled(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) scaled.at(i, j) = m.at(i, j) * fault.scale;
    // Deliberately corrupt, so construct with a tolerance nothing can trip;
    // the conservation guard downstream is what this hook exists to exercise.
    return StepOperator(SemiUnitaryMatrix(std::move(scaled), 1e300), op.passthrough(),
                        op.source_labels(), op.target_labels());
  };
}

namespace {

Schedule maybe_faulted(Schedule s, const RunConfig& cfg) {
  if (cfg.inject_fault) return with_fault(std::move(s), *cfg.inject_fault);
  return s;
}

SeriesRow row_from_step(const TrajectoryStep& st, bool verbose) {
  SeriesRow row;
  row.n = st.n;
  row.t_seconds = st.t_seconds;
  for (const Complex& a : st.tracked_amplitudes) row.channel_probs.push_back(std::norm(a));
  row.cumulative_decayed = st.cumulative_decayed;
  row.conservation_residual = st.conservation_residual;
  if (verbose) {
    row.amplitudes = st.full_amplitudes;
    row.labels = st.full_labels;
  }
  return row;
}

Series decay_series(const RunConfig& cfg, const DecayRun& d) {
  EvolveOptions opt;
  opt.verbose = cfg.verbose_z_channels;
  opt.tracked = {"X"};
  Trajectory traj = evolve(decay_initial_state(), maybe_faulted(decay_schedule(d.params), cfg),
                           cfg.n_steps, cfg.tau, opt);
  Series s;
  s.channel_labels = {"X"};
  s.verbose = cfg.verbose_z_channels;
  for (int n = 0; n <= cfg.n_steps; ++n) {
    SeriesRow row = row_from_step(traj.at(n), s.verbose);
    row.closed_probs = {decay_survival_closed(d.params, n)};
    s.rows.push_back(std::move(row));
  }
  return s;
}

Series zeno_series(const RunConfig& cfg, const ZenoRun& z) {
  const auto closed = zeno_sweep(z.gamma, z.t_total, z.n_list);
  Series s;
  s.channel_labels = {"X"};
  s.verbose = cfg.verbose_z_channels;
  for (std::size_t i = 0; i < z.n_list.size(); ++i) {
    const int n = z.n_list[i];
    const double tau_i = z.t_total / static_cast<double>(n);
    const double x = z.gamma * tau_i * tau_i;
    const DecayParams p{Complex{std::sqrt(1.0 - x), 0.0}, Complex{std::sqrt(x), 0.0}, tau_i};
    EvolveOptions opt;
    opt.verbose = cfg.verbose_z_channels;
    opt.tracked = {"X"};
    Trajectory traj =
        evolve(decay_initial_state(), maybe_faulted(decay_schedule(p), cfg), n, tau_i, opt);
    SeriesRow row = row_from_step(traj.at(n), s.verbose);
    row.closed_probs = {closed[i].second};
    s.rows.push_back(std::move(row));
  }
  return s;
}

Series ammonium_series(const RunConfig& cfg, const AmmoniumRun& a) {
  EvolveOptions opt;
  opt.verbose = cfg.verbose_z_channels;
  opt.tracked = {"X", "Y"};
  Trajectory traj = evolve(ammonium_initial_state(),
                           maybe_faulted(ammonium_schedule(a.params), cfg), cfg.n_steps,
                           cfg.tau, opt);
  const UvTheta& uv = a.params.uv();
  Series s;
  s.channel_labels = {"X", "Y"};
  s.verbose = cfg.verbose_z_channels;
  for (int n = 0; n <= cfg.n_steps; ++n) {
    SeriesRow row = row_from_step(traj.at(n), s.verbose);
    const OscillationProbs probs = ammonium_probs_closed(uv.u, uv.v, uv.theta, n);
    row.closed_probs = {probs.pr_xx, probs.pr_yx};
    s.rows.push_back(std::move(row));
  }
  return s;
}

Series kaon_series(const RunConfig& cfg, const KaonRun& k) {
  EvolveOptions opt;
  opt.verbose = cfg.verbose_z_channels;
  opt.tracked = {"X", "Y"};
  Trajectory traj = evolve(kaon_initial_state(k.initial[0], k.initial[1]),
                           maybe_faulted(kaon_schedule(k.params), cfg), cfg.n_steps, cfg.tau,
                           opt);
  const EigenmodeDecomposition d = kaon_eigenmodes(k.params, k.initial);
  Series s;
  s.channel_labels = {"X", "Y"};
  s.verbose = cfg.verbose_z_channels;
  for (int n = 0; n <= cfg.n_steps; ++n) {
    SeriesRow row = row_from_step(traj.at(n), s.verbose);
    const KaonSurvival cs = kaon_survival_closed(d, n);
    row.closed_probs = {cs.pr_x, cs.pr_y};
    s.rows.push_back(std::move(row));
  }
  return s;
}

void write_json_value(std::ostream& out, const nlohmann::json& v) {
  using nlohmann::json;
  switch (v.type()) {
    case json::value_t::object: {
      out << '{';
      bool first = true;
      for (const auto& [key, value] : v.items()) {
        if (!first) out << ',';
        first = false;
        out << json(key).dump() << ':';
        write_json_value(out, value);
      }
      out << '}';
      break;
    }
    case json::value_t::array: {
      out << '[';
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out << ',';
        write_json_value(out, v[i]);
      }
      out << ']';
      break;
    }
    case json::value_t::number_float:
      out << format_double(v.get<double>());
      break;
    default:
      out << v.dump();
  }
}

void write_complex(std::ostream& out, const Complex& z) {
  out << '[' << format_double(z.real()) << ',' << format_double(z.imag()) << ']';
}

}  // namespace

Series run_series(const RunConfig& cfg) {
  if (std::holds_alternative<DecayRun>(cfg.run))
    return decay_series(cfg, std::get<DecayRun>(cfg.run));
  if (std::holds_alternative<ZenoRun>(cfg.run))
    return zeno_series(cfg, std::get<ZenoRun>(cfg.run));
  if (std::holds_alternative<AmmoniumRun>(cfg.run))
    return ammonium_series(cfg, std::get<AmmoniumRun>(cfg.run));
  if (std::holds_alternative<KaonRun>(cfg.run))
    return kaon_series(cfg, std::get<KaonRun>(cfg.run));
  throw Error("config carries no resolved scenario");
}

void write_csv(const Series& s, std::ostream& out) {
  out << "n,t_seconds";
  for (const auto& label : s.channel_labels) out << ",Pr_" << label;
  out << ",cumulative_decayed";
  for (const auto& label : s.channel_labels) out << ",closed_Pr_" << label;
  out << ",conservation_residual\r\n";
  for (const SeriesRow& row : s.rows) {
    out << row.n << ',' << format_double(row.t_seconds);
    for (double p : row.channel_probs) out << ',' << format_double(p);
    out << ',' << format_double(row.cumulative_decayed);
    for (double p : row.closed_probs) out << ',' << format_double(p);
    out << ',' << format_double(row.conservation_residual) << "\r\n";
  }
}

void write_json(const Series& s, const nlohmann::json& resolved, std::ostream& out) {
  out << "{\n\"config\": ";
  write_json_value(out, resolved);
  out << ",\n\"rows\": [";
  for (std::size_t r = 0; r < s.rows.size(); ++r) {
    const SeriesRow& row = s.rows[r];
    out << (r ? ",\n" : "\n");
    out << "{\"n\":" << row.n << ",\"t_seconds\":" << format_double(row.t_seconds);
    for (std::size_t i = 0; i < s.channel_labels.size(); ++i)
      out << ",\"Pr_" << s.channel_labels[i] << "\":" << format_double(row.channel_probs[i]);
    out << ",\"cumulative_decayed\":" << format_double(row.cumulative_decayed);
    for (std::size_t i = 0; i < s.channel_labels.size(); ++i)
      out << ",\"closed_Pr_" << s.channel_labels[i]
          << "\":" << format_double(row.closed_probs[i]);
    out << ",\"conservation_residual\":" << format_double(row.conservation_residual);
    if (s.verbose) {
      out << ",\"labels\":[";
      for (std::size_t i = 0; i < row.labels.size(); ++i) {
        if (i) out << ',';
        out << nlohmann::json(row.labels[i]).dump();
      }
      out << "],\"amplitudes\":[";
      for (std::size_t i = 0; i < row.amplitudes.size(); ++i) {
        if (i) out << ',';
        write_complex(out, row.amplitudes[i]);
      }
      out << ']';
    }
    out << '}';
  }
  out << "\n]\n}\n";
}

RunResult run(const RunConfig& cfg) {
  RunResult res;
  res.output_path = cfg.output_path;
  try {
    Series s = run_series(cfg);
    std::ofstream out(cfg.output_path, std::ios::binary);
    if (!out) throw Error("cannot open output path: " + cfg.output_path);
    if (cfg.output_format == OutputFormat::kCsv)
      write_csv(s, out);
    else
      write_json(s, cfg.resolved, out);
    out.flush();
    if (!out) throw Error("write failed: " + cfg.output_path);
    res.rows = s.rows.size();
    res.message = "ok";
  } catch (const NumericIntegrityError& e) {
    res.exit_code = 2;
    res.message = e.what();
  } catch (const Error& e) {
    res.exit_code = 1;
    res.message = e.what();
  }
  return res;
}

namespace {

// One dual-path pass: the block fast path on plain amplitude vectors next to
// the dense tensor-product oracle on full labstates, amplitudes compared
// slot by slot after every step.
void crosscheck_one(const Labstate& initial, const Schedule& schedule, int n_steps,
                    std::size_t max_rank, const std::string& tag, CrosscheckReport& rep) {
  const std::size_t r0 = initial.net().rank();
  if (r0 > max_rank) {
    rep.notes.push_back(tag + ": initial rank exceeds the cap, nothing compared");
    if (!rep.truncated_at) rep.truncated_at = 0;
    return;
  }
  std::vector<Complex> vec(r0);
  for (std::size_t i = 0; i < r0; ++i)
    vec[i] = initial.amplitude(BasisSignal::single(r0, i));
  Labstate oracle_state = initial;
  for (int k = 1; k <= n_steps; ++k) {
    StepOperator op = schedule(k);
    if (op.target_rank() > max_rank) {
      if (!rep.truncated_at) rep.truncated_at = k;
      rep.notes.push_back(tag + ": truncated at step " + std::to_string(k) +
                          ", target rank " + std::to_string(op.target_rank()) +
                          " exceeds cap " + std::to_string(max_rank));
      return;
    }
    const HeisenbergNet target(k, op.target_labels());
    oracle_state = oracle_evolve_one_signal(op.full_semi_unitary(), oracle_state, target);
    vec = step(vec, op);
    const std::size_t r = vec.size();
    for (std::size_t i = 0; i < r; ++i) {
      const double dev = std::abs(vec[i] - oracle_state.amplitude(BasisSignal::single(r, i)));
      if (dev > rep.max_deviation) rep.max_deviation = dev;
    }
    ++rep.steps_compared;
  }
}

}  // namespace

CrosscheckReport crosscheck(const RunConfig& cfg, std::size_t max_rank) {
  if (max_rank > kOracleRankCap)
    throw ArgumentError("crosscheck rank cap must not exceed " +
                        std::to_string(kOracleRankCap));
  CrosscheckReport rep;
  if (const auto* d = std::get_if<DecayRun>(&cfg.run)) {
    crosscheck_one(decay_initial_state(), maybe_faulted(decay_schedule(d->params), cfg),
                   cfg.n_steps, max_rank, "decay", rep);
  } else if (const auto* z = std::get_if<ZenoRun>(&cfg.run)) {
    for (int n : z->n_list) {
      const double tau_i = z->t_total / static_cast<double>(n);
      const double x = z->gamma * tau_i * tau_i;
      const DecayParams p{Complex{std::sqrt(1.0 - x), 0.0}, Complex{std::sqrt(x), 0.0}, tau_i};
      crosscheck_one(decay_initial_state(), maybe_faulted(decay_schedule(p), cfg), n, max_rank,
                     "zeno n=" + std::to_string(n), rep);
    }
  } else if (const auto* a = std::get_if<AmmoniumRun>(&cfg.run)) {
    crosscheck_one(ammonium_initial_state(), maybe_faulted(ammonium_schedule(a->params), cfg),
                   cfg.n_steps, max_rank, "ammonium", rep);
  } else if (const auto* k = std::get_if<KaonRun>(&cfg.run)) {
    crosscheck_one(kaon_initial_state(k->initial[0], k->initial[1]),
                   maybe_faulted(kaon_schedule(k->params), cfg), cfg.n_steps, max_rank, "kaon",
                   rep);
  } else {
    throw Error("config carries no resolved scenario");
  }
  rep.pass = rep.max_deviation <= kOracleMatchTol;
  return rep;
}

namespace {

std::string suffixed_path(const std::string& path, const std::string& param,
                          const std::string& value) {
  const std::size_t slash = path.find_last_of('/');
  const std::size_t dot = path.find_last_of('.');
  const std::string tag = "_" + param + "_" + value;
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
    return path + tag;
  return path.substr(0, dot) + tag + path.substr(dot);
}

}  // namespace

std::vector<SweepOutcome> sweep(const nlohmann::json& base, const std::string& source,
                                const std::string& param,
                                const std::vector<std::string>& values) {
  if (values.empty()) throw ArgumentError("sweep needs at least one value");
  std::vector<SweepOutcome> outcomes;
  for (const std::string& token : values) {
    SweepOutcome outcome;
    outcome.value = token;
    nlohmann::json parsed;
    try {
      parsed = nlohmann::json::parse(token);
    } catch (const nlohmann::json::parse_error&) {
      parsed = nullptr;
    }
    if (!parsed.is_number()) {
      outcome.result.exit_code = 1;
      outcome.result.message = "sweep value '" + token + "' is not a number";
      outcomes.push_back(std::move(outcome));
      continue;
    }
    nlohmann::json j = base;
    if (param == "tau" || param == "n_steps" || param == "seed")
      j[param] = parsed;
    else
      j["parameters"][param] = parsed;
    try {
      RunConfig cfg = config_from_json(j, source + " [" + param + "=" + token + "]");
      cfg.output_path = suffixed_path(cfg.output_path, param, token);
      cfg.resolved["output_path"] = cfg.output_path;
      outcome.result = run(cfg);
    } catch (const ConfigError& e) {
      outcome.result.exit_code = 1;
      outcome.result.message = e.what();
    }
    outcomes.push_back(std::move(outcome));
  }
  return outcomes;
}

}  // namespace sigq
