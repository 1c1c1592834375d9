#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "sigq/decay.hpp"
#include "sigq/kaon.hpp"
#include "sigq/oscillation.hpp"

namespace sigq {

enum class Scenario { kDecay, kZeno, kAmmonium, kKaon };
enum class OutputFormat { kCsv, kJson };

std::string to_string(Scenario s);

// Deliberate mid-run corruption of one step operator, for exercising the
// conservation guard end to end.
struct FaultInjection {
  int step = 0;
  double scale = 1.0;
};

struct DecayRun {
  DecayParams params;
};

struct ZenoRun {
  double gamma = 0.0;
  double t_total = 0.0;
  std::vector<int> n_list;
};

struct AmmoniumRun {
  OscillationParams params;
};

struct KaonRun {
  KaonParams params;
  std::array<Complex, 2> initial{Complex{1.0, 0.0}, Complex{0.0, 0.0}};
  bool sampled = false;
};

struct RunConfig {
  Scenario scenario = Scenario::kDecay;
  std::variant<std::monostate, DecayRun, ZenoRun, AmmoniumRun, KaonRun> run;
  int n_steps = 0;
  double tau = 1.0;
  std::optional<std::uint64_t> seed;
  OutputFormat output_format = OutputFormat::kCsv;
  std::string output_path;
  bool verbose_z_channels = false;
  std::optional<FaultInjection> inject_fault;

  // Post-resolution echo (normalized values, sampled parameters filled in);
  // written into JSON output headers and reused by sweeps.
  nlohmann::json resolved;
};

// Builds a validated RunConfig from parsed JSON. Collects every problem and
// throws a single ConfigError listing all of them. Complex values are
// encoded as [re, im]. Unit-norm constraints are accepted within 1e-9 and
// renormalized to the exact constraint surface.
RunConfig config_from_json(const nlohmann::json& j, const std::string& source);

// Reads and parses a config file, then defers to config_from_json.
RunConfig load_config(const std::string& path);

}  // namespace sigq
