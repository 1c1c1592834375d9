#include "sigq/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

namespace sigq {

namespace {

using nlohmann::json;

struct Collector {
  std::vector<std::string> issues;
  void add(std::string s) { issues.push_back(std::move(s)); }
  bool ok() const { return issues.empty(); }
};

std::optional<double> read_number(const json& j, const std::string& path, Collector& c) {
  if (!j.is_number()) {
    c.add(path + ": expected a number");
    return std::nullopt;
  }
  return j.get<double>();
}

std::optional<int> read_int(const json& j, const std::string& path, Collector& c) {
  if (!j.is_number_integer()) {
    c.add(path + ": expected an integer");
    return std::nullopt;
  }
  return j.get<int>();
}

// Complex values are [re, im] pairs.
std::optional<Complex> read_complex(const json& j, const std::string& path, Collector& c) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    c.add(path + ": expected a complex value encoded as [re, im]");
    return std::nullopt;
  }
  return Complex{j[0].get<double>(), j[1].get<double>()};
}

json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where,
                Collector& c) {
  for (const auto& [key, value] : obj.items())
    if (!allowed.count(key)) c.add(where + ": unknown field '" + key + "'");
}

std::optional<Scenario> read_scenario(const json& j, Collector& c) {
  if (!j.contains("scenario") || !j["scenario"].is_string()) {
    c.add("scenario: required string field (decay | zeno | ammonium | kaon)");
    return std::nullopt;
  }
  const std::string s = j["scenario"].get<std::string>();
  if (s == "decay") return Scenario::kDecay;
  if (s == "zeno") return Scenario::kZeno;
  if (s == "ammonium") return Scenario::kAmmonium;
  if (s == "kaon") return Scenario::kKaon;
  c.add("scenario: unknown scenario '" + s + "'");
  return std::nullopt;
}

}  // namespace

std::string to_string(Scenario s) {
  switch (s) {
    case Scenario::kDecay: return "decay";
    case Scenario::kZeno: return "zeno";
    case Scenario::kAmmonium: return "ammonium";
    case Scenario::kKaon: return "kaon";
  }
  return "unknown";
}

RunConfig config_from_json(const json& j, const std::string& source) {
  Collector c;
  if (!j.is_object()) throw ConfigError({source + ": top level must be a JSON object"});

  check_keys(j,
             {"scenario", "parameters", "n_steps", "tau", "seed", "output_format", "output_path",
              "verbose_z_channels", "inject_fault"},
             source, c);

  RunConfig cfg;
  const auto scenario = read_scenario(j, c);

  const bool needs_steps = !scenario || *scenario != Scenario::kZeno;
  if (j.contains("n_steps")) {
    if (const auto n = read_int(j["n_steps"], "n_steps", c)) {
      if (*n < 0)
        c.add("n_steps: must be nonnegative");
      else
        cfg.n_steps = *n;
    }
  } else if (needs_steps) {
    c.add("n_steps: required field");
  }

  if (j.contains("tau")) {
    if (const auto t = read_number(j["tau"], "tau", c)) {
      if (!(*t > 0.0))
        c.add("tau: must be positive");
      else
        cfg.tau = *t;
    }
  } else if (needs_steps) {
    c.add("tau: required field");
  }

  if (j.contains("seed")) {
    if (!j["seed"].is_number_integer() || j["seed"].get<long long>() < 0)
      c.add("seed: must be a nonnegative integer");
    else
      cfg.seed = j["seed"].get<std::uint64_t>();
  }

  if (j.contains("output_format")) {
    const json& f = j["output_format"];
    if (f.is_string() && f.get<std::string>() == "csv")
      cfg.output_format = OutputFormat::kCsv;
    else if (f.is_string() && f.get<std::string>() == "json")
      cfg.output_format = OutputFormat::kJson;
    else
      c.add("output_format: must be \"csv\" or \"json\"");
  }

  if (!j.contains("output_path") || !j["output_path"].is_string() ||
      j["output_path"].get<std::string>().empty())
    c.add("output_path: required nonempty string field");
  else
    cfg.output_path = j["output_path"].get<std::string>();

  if (j.contains("verbose_z_channels")) {
    if (!j["verbose_z_channels"].is_boolean())
      c.add("verbose_z_channels: must be a boolean");
    else
      cfg.verbose_z_channels = j["verbose_z_channels"].get<bool>();
  }

  if (j.contains("inject_fault")) {
    const json& f = j["inject_fault"];
    if (!f.is_object()) {
      c.add("inject_fault: must be an object with fields step and scale");
    } else {
      check_keys(f, {"step", "scale"}, "inject_fault", c);
      FaultInjection fault;
      bool ok = true;
      if (f.contains("step")) {
        if (const auto s = read_int(f["step"], "inject_fault.step", c); s && *s >= 1)
          fault.step = *s;
        else if (s)
          c.add("inject_fault.step: must be >= 1"), ok = false;
        else
          ok = false;
      } else {
        c.add("inject_fault.step: required");
        ok = false;
      }
      if (f.contains("scale")) {
        if (const auto s = read_number(f["scale"], "inject_fault.scale", c); s && *s > 0.0)
          fault.scale = *s;
        else if (s)
          c.add("inject_fault.scale: must be positive"), ok = false;
        else
          ok = false;
      } else {
        c.add("inject_fault.scale: required");
        ok = false;
      }
      if (ok) cfg.inject_fault = fault;
    }
  }

  const json params = j.contains("parameters") && j["parameters"].is_object()
                          ? j["parameters"]
                          : json::object();
  if (j.contains("parameters") && !j["parameters"].is_object())
    c.add("parameters: must be an object");

  json resolved_params = json::object();

  if (scenario) {
    cfg.scenario = *scenario;
    switch (*scenario) {
      case Scenario::kDecay: {
        check_keys(params, {"alpha", "beta", "Gamma"}, "parameters", c);
        const bool has_ab = params.contains("alpha") || params.contains("beta");
        if (has_ab && params.contains("Gamma")) {
          c.add("parameters: give either alpha and beta or Gamma, not both");
        } else if (has_ab) {
          std::optional<Complex> a, b;
          if (params.contains("alpha"))
            a = read_complex(params["alpha"], "parameters.alpha", c);
          else
            c.add("parameters.alpha: required when beta is given");
          if (params.contains("beta"))
            b = read_complex(params["beta"], "parameters.beta", c);
          else
            c.add("parameters.beta: required when alpha is given");
          if (a && b) {
            const double total = std::norm(*a) + std::norm(*b);
            if (std::abs(total - 1.0) > kConfigNormTol) {
              std::ostringstream os;
              os << "parameters.alpha, parameters.beta: |alpha|^2 + |beta|^2 = " << total
                 << " deviates from 1 beyond " << kConfigNormTol;
              c.add(os.str());
            } else if (c.ok()) {
              const double scale = 1.0 / std::sqrt(total);
              cfg.run = DecayRun{DecayParams(*a * scale, *b * scale, cfg.tau)};
              resolved_params["alpha"] = complex_to_json(*a * scale);
              resolved_params["beta"] = complex_to_json(*b * scale);
            }
          }
        } else if (params.contains("Gamma")) {
          if (const auto g = read_number(params["Gamma"], "parameters.Gamma", c)) {
            if (*g < 0.0) {
              c.add("parameters.Gamma: must be nonnegative");
            } else if (c.ok()) {
              DecayParams p = decay_params_from_gamma(*g, cfg.tau);
              resolved_params["Gamma"] = *g;
              resolved_params["alpha"] = complex_to_json(p.alpha);
              resolved_params["beta"] = complex_to_json(p.beta);
              cfg.run = DecayRun{std::move(p)};
            }
          }
        } else {
          c.add("parameters: decay needs either alpha and beta or Gamma");
        }
        break;
      }
      case Scenario::kZeno: {
        check_keys(params, {"gamma", "t", "n_list"}, "parameters", c);
        ZenoRun z;
        bool ok = true;
        if (params.contains("gamma")) {
          if (const auto g = read_number(params["gamma"], "parameters.gamma", c); g && *g > 0.0)
            z.gamma = *g;
          else if (g)
            c.add("parameters.gamma: must be positive"), ok = false;
          else
            ok = false;
        } else {
          c.add("parameters.gamma: required");
          ok = false;
        }
        if (params.contains("t")) {
          if (const auto t = read_number(params["t"], "parameters.t", c); t && *t > 0.0)
            z.t_total = *t;
          else if (t)
            c.add("parameters.t: must be positive"), ok = false;
          else
            ok = false;
        } else {
          c.add("parameters.t: required");
          ok = false;
        }
        if (params.contains("n_list") && params["n_list"].is_array() &&
            !params["n_list"].empty()) {
          for (std::size_t i = 0; i < params["n_list"].size(); ++i) {
            const std::string path = "parameters.n_list[" + std::to_string(i) + "]";
            if (const auto n = read_int(params["n_list"][i], path, c)) {
              if (*n < 1)
                c.add(path + ": mesh counts must be >= 1"), ok = false;
              else
                z.n_list.push_back(*n);
            } else {
              ok = false;
            }
          }
        } else {
          c.add("parameters.n_list: required nonempty array of integers");
          ok = false;
        }
        if (ok) {
          for (std::size_t i = 0; i < z.n_list.size(); ++i) {
            const double tau_i = z.t_total / static_cast<double>(z.n_list[i]);
            if (!(z.gamma * tau_i * tau_i < 1.0))
              c.add("parameters.n_list[" + std::to_string(i) + "]: gamma (t/n)^2 >= 1 at n = " +
                    std::to_string(z.n_list[i]) + "; outside the quadratic regime");
          }
        }
        if (ok && c.ok()) {
          resolved_params["gamma"] = z.gamma;
          resolved_params["t"] = z.t_total;
          resolved_params["n_list"] = z.n_list;
          cfg.run = ZenoRun{std::move(z)};
        }
        break;
      }
      case Scenario::kAmmonium: {
        check_keys(params, {"a", "b"}, "parameters", c);
        std::optional<Complex> a, b;
        if (params.contains("a"))
          a = read_complex(params["a"], "parameters.a", c);
        else
          c.add("parameters.a: required");
        if (params.contains("b"))
          b = read_complex(params["b"], "parameters.b", c);
        else
          c.add("parameters.b: required");
        if (a && b) {
          const double total = std::norm(*a) + std::norm(*b);
          if (std::abs(total - 1.0) > kConfigNormTol) {
            std::ostringstream os;
            os << "parameters.a, parameters.b: |a|^2 + |b|^2 = " << total
               << " deviates from 1 beyond " << kConfigNormTol;
            c.add(os.str());
          } else {
            const double scale = 1.0 / std::sqrt(total);
            const Complex an = *a * scale, bn = *b * scale;
            if (std::abs(an.real()) >= 1.0 - 1e-14) {
              c.add("parameters.a: |Re a| = 1 is degenerate; no oscillation dynamics exist");
            } else if (c.ok()) {
              cfg.run = AmmoniumRun{OscillationParams(an, bn)};
              resolved_params["a"] = complex_to_json(an);
              resolved_params["b"] = complex_to_json(bn);
            }
          }
        }
        break;
      }
      case Scenario::kKaon: {
        check_keys(params, {"alpha", "beta", "gamma", "u", "v", "w", "initial"}, "parameters", c);
        const std::vector<std::string> names = {"alpha", "beta", "gamma", "u", "v", "w"};
        std::vector<std::string> missing;
        for (const auto& name : names)
          if (!params.contains(name)) missing.push_back("parameters." + name);

        std::optional<KaonParams> kp;
        bool sampled = false;
        if (missing.empty()) {
          std::array<std::optional<Complex>, 6> vals;
          for (std::size_t i = 0; i < names.size(); ++i)
            vals[i] = read_complex(params[names[i]], "parameters." + names[i], c);
          bool all = true;
          for (const auto& v : vals) all = all && v.has_value();
          if (all) {
            // Accept hand-rounded columns: renormalize each, re-orthogonalize
            // the second against the first, then hold them to the tight
            // constraint. Anything beyond the loose tolerance is an error.
            std::array<Complex, 3> c1 = {*vals[0], *vals[1], *vals[2]};
            std::array<Complex, 3> c2 = {*vals[3], *vals[4], *vals[5]};
            const double n1 = std::sqrt(std::norm(c1[0]) + std::norm(c1[1]) + std::norm(c1[2]));
            const double n2 = std::sqrt(std::norm(c2[0]) + std::norm(c2[1]) + std::norm(c2[2]));
            Complex ortho{0.0, 0.0};
            for (int i = 0; i < 3; ++i) ortho += std::conj(c1[i]) * c2[i];
            if (std::abs(n1 - 1.0) > kConfigNormTol)
              c.add("parameters.alpha, parameters.beta, parameters.gamma: column norm " +
                    std::to_string(n1) + " deviates from 1 beyond tolerance");
            else if (std::abs(n2 - 1.0) > kConfigNormTol)
              c.add("parameters.u, parameters.v, parameters.w: column norm " +
                    std::to_string(n2) + " deviates from 1 beyond tolerance");
            else if (std::abs(ortho) > kConfigNormTol)
              c.add("parameters: decay columns are not orthogonal: |<col1, col2>| = " +
                    std::to_string(std::abs(ortho)));
            else {
              for (auto& x : c1) x /= n1;
              Complex proj{0.0, 0.0};
              for (int i = 0; i < 3; ++i) proj += std::conj(c1[i]) * c2[i];
              for (int i = 0; i < 3; ++i) c2[i] -= proj * c1[i];
              double rn = std::sqrt(std::norm(c2[0]) + std::norm(c2[1]) + std::norm(c2[2]));
              for (auto& x : c2) x /= rn;
              if (c.ok()) kp = KaonParams(c1[0], c1[1], c1[2], c2[0], c2[1], c2[2]);
            }
          }
        } else if (cfg.seed) {
          if (c.ok()) {
            kp = kaon_params_sample(*cfg.seed);
            sampled = true;
          }
        } else {
          for (const auto& m : missing)
            c.add(m + ": required (or provide a seed to sample the full parameter set)");
        }

        std::array<Complex, 2> initial{Complex{1.0, 0.0}, Complex{0.0, 0.0}};
        if (params.contains("initial")) {
          const json& init = params["initial"];
          if (!init.is_object()) {
            c.add("parameters.initial: must be an object with complex fields a and b");
          } else {
            check_keys(init, {"a", "b"}, "parameters.initial", c);
            std::optional<Complex> ia, ib;
            if (init.contains("a"))
              ia = read_complex(init["a"], "parameters.initial.a", c);
            else
              c.add("parameters.initial.a: required");
            if (init.contains("b"))
              ib = read_complex(init["b"], "parameters.initial.b", c);
            else
              c.add("parameters.initial.b: required");
            if (ia && ib) {
              const double total = std::norm(*ia) + std::norm(*ib);
              if (std::abs(total - 1.0) > kConfigNormTol) {
                c.add("parameters.initial: |a|^2 + |b|^2 = " + std::to_string(total) +
                      " deviates from 1 beyond tolerance");
              } else {
                const double scale = 1.0 / std::sqrt(total);
                initial = {*ia * scale, *ib * scale};
              }
            }
          }
        }

        if (kp && c.ok()) {
          resolved_params["alpha"] = complex_to_json(kp->alpha);
          resolved_params["beta"] = complex_to_json(kp->beta);
          resolved_params["gamma"] = complex_to_json(kp->gamma);
          resolved_params["u"] = complex_to_json(kp->u);
          resolved_params["v"] = complex_to_json(kp->v);
          resolved_params["w"] = complex_to_json(kp->w);
          resolved_params["initial"] = {{"a", complex_to_json(initial[0])},
                                        {"b", complex_to_json(initial[1])}};
          cfg.run = KaonRun{std::move(*kp), initial, sampled};
        }
        break;
      }
    }
  }

  if (!c.ok()) throw ConfigError(std::move(c.issues));

  cfg.resolved = json::object();
  cfg.resolved["scenario"] = to_string(cfg.scenario);
  cfg.resolved["parameters"] = resolved_params;
  cfg.resolved["n_steps"] = cfg.n_steps;
  cfg.resolved["tau"] = cfg.tau;
  if (cfg.seed) cfg.resolved["seed"] = *cfg.seed;
  cfg.resolved["output_format"] = cfg.output_format == OutputFormat::kCsv ? "csv" : "json";
  cfg.resolved["output_path"] = cfg.output_path;
  cfg.resolved["verbose_z_channels"] = cfg.verbose_z_channels;
  if (cfg.inject_fault)
    cfg.resolved["inject_fault"] = {{"step", cfg.inject_fault->step},
                                    {"scale", cfg.inject_fault->scale}};
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({path + ": cannot open config file"});
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError({path + ": JSON parse error: " + e.what()});
  }
  return config_from_json(j, path);
}

}  // namespace sigq
