#include <cstdio>
#include <exception>
#include <fstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sigq/runner.hpp"

namespace {

int do_validate(const std::string& path) {
  const sigq::RunConfig cfg = sigq::load_config(path);
  std::printf("ok: %s scenario, output -> %s\n", sigq::to_string(cfg.scenario).c_str(),
              cfg.output_path.c_str());
  return 0;
}

int do_run(const std::string& path) {
  const sigq::RunConfig cfg = sigq::load_config(path);
  const sigq::RunResult res = sigq::run(cfg);
  if (res.exit_code != 0) {
    std::fprintf(stderr, "error: %s\n", res.message.c_str());
  } else {
    std::printf("wrote %s (%zu rows)\n", res.output_path.c_str(), res.rows);
  }
  return res.exit_code;
}

int do_sweep(const std::string& path, const std::string& param,
             const std::vector<std::string>& values) {
  std::ifstream in(path);
  if (!in) throw sigq::ConfigError({path + ": cannot open config file"});
  nlohmann::json base;
  try {
    in >> base;
  } catch (const nlohmann::json::parse_error& e) {
    throw sigq::ConfigError({path + ": JSON parse error: " + e.what()});
  }
  int exit_code = 0;
  for (const sigq::SweepOutcome& o : sigq::sweep(base, path, param, values)) {
    if (o.result.exit_code == 0) {
      std::printf("%s=%s -> %s (%zu rows)\n", param.c_str(), o.value.c_str(),
                  o.result.output_path.c_str(), o.result.rows);
    } else {
      std::fprintf(stderr, "%s=%s failed: %s\n", param.c_str(), o.value.c_str(),
                   o.result.message.c_str());
    }
    if (o.result.exit_code > exit_code) exit_code = o.result.exit_code;
  }
  return exit_code;
}

int do_crosscheck(const std::string& path, int max_rank) {
  const sigq::RunConfig cfg = sigq::load_config(path);
  const sigq::CrosscheckReport rep =
      sigq::crosscheck(cfg, static_cast<std::size_t>(max_rank));
  std::printf("crosscheck: %s\n", rep.pass ? "PASS" : "FAIL");
  std::printf("max_deviation: %s\n", sigq::format_double(rep.max_deviation).c_str());
  std::printf("steps_compared: %d\n", rep.steps_compared);
  if (rep.truncated_at) std::printf("truncated_at: %d\n", *rep.truncated_at);
  for (const std::string& note : rep.notes) std::printf("note: %s\n", note.c_str());
  return rep.pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"signal-state scenario runner"};
  app.require_subcommand(1);

  std::string config_path;
  std::string sweep_param;
  std::vector<std::string> sweep_values;
  int max_rank = 14;

  CLI::App* cmd_run = app.add_subcommand("run", "run a scenario and write its time series");
  cmd_run->add_option("config", config_path, "JSON config file")->required();

  CLI::App* cmd_sweep =
      app.add_subcommand("sweep", "run once per value of one numeric parameter");
  cmd_sweep->add_option("config", config_path, "JSON config file")->required();
  cmd_sweep->add_option("--param", sweep_param, "parameter name to vary")->required();
  cmd_sweep->add_option("--values", sweep_values, "comma separated values")
      ->required()
      ->delimiter(',');

  CLI::App* cmd_cross = app.add_subcommand(
      "crosscheck", "compare the fast path against the dense oracle");
  cmd_cross->add_option("config", config_path, "JSON config file")->required();
  cmd_cross->add_option("--max-rank", max_rank, "dense oracle rank cap")
      ->check(CLI::Range(1, 14));

  CLI::App* cmd_validate = app.add_subcommand("validate", "check a config and report issues");
  cmd_validate->add_option("config", config_path, "JSON config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (cmd_run->parsed()) return do_run(config_path);
    if (cmd_sweep->parsed()) return do_sweep(config_path, sweep_param, sweep_values);
    if (cmd_cross->parsed()) return do_crosscheck(config_path, max_rank);
    if (cmd_validate->parsed()) return do_validate(config_path);
  } catch (const sigq::ConfigError& e) {
    for (const std::string& issue : e.issues())
      std::fprintf(stderr, "config error: %s\n", issue.c_str());
    return 1;
  } catch (const sigq::NumericIntegrityError& e) {
    std::fprintf(stderr, "numeric integrity error: %s\n", e.what());
    return 2;
  } catch (const sigq::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
