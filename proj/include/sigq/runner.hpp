#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sigq/config.hpp"
#include "sigq/dynamics.hpp"

namespace sigq {

// %.17g, enough digits to round-trip a double exactly.
std::string format_double(double x);

struct SeriesRow {
  int n = 0;
  double t_seconds = 0.0;
  std::vector<double> channel_probs;  // aligned with Series::channel_labels
  double cumulative_decayed = 0.0;
  std::vector<double> closed_probs;   // same alignment
  double conservation_residual = 0.0;
  std::vector<Complex> amplitudes;    // verbose mode only
  std::vector<std::string> labels;    // verbose mode only
};

struct Series {
  std::vector<std::string> channel_labels;
  std::vector<SeriesRow> rows;
  bool verbose = false;
};

// Builds the full time series for a validated config. Throws on schedule or
// conservation failures; run() below maps those to exit codes.
Series run_series(const RunConfig& cfg);

// Column order: n, t_seconds, Pr_<label>.., cumulative_decayed,
// closed_Pr_<label>.., conservation_residual. CRLF line endings, header row.
void write_csv(const Series& s, std::ostream& out);

// Rows as an array of objects in the same column order, preceded by an echo
// of the resolved config. Verbose rows carry labels and [re, im] amplitudes.
void write_json(const Series& s, const nlohmann::json& resolved, std::ostream& out);

struct RunResult {
  int exit_code = 0;  // 0 ok, 1 validation, 2 numeric integrity
  std::string message;
  std::string output_path;
  std::size_t rows = 0;
};

// Runs a scenario and writes the configured output file. Never throws;
// failures come back as exit codes with the offending step in the message.
RunResult run(const RunConfig& cfg);

struct CrosscheckReport {
  bool pass = false;
  double max_deviation = 0.0;
  int steps_compared = 0;
  std::optional<int> truncated_at;  // first step whose target rank exceeds the cap
  std::vector<std::string> notes;
};

// Drives the block-matrix fast path and the dense tensor-product oracle side
// by side, comparing every amplitude after every step until the net rank
// would exceed max_rank. Truncation is a notice, not a failure.
CrosscheckReport crosscheck(const RunConfig& cfg, std::size_t max_rank = kOracleRankCap);

struct SweepOutcome {
  std::string value;  // the literal token the run was built from
  RunResult result;
};

// Re-resolves the base config once per value with the named numeric field
// overridden ("tau", "n_steps", "seed", or a scenario parameter name) and
// runs each, writing to output_path suffixed with the parameter and value.
std::vector<SweepOutcome> sweep(const nlohmann::json& base, const std::string& source,
                                const std::string& param,
                                const std::vector<std::string>& values);

// Wraps a schedule so the operator at one step comes back with every block
// entry scaled. scale != 1 breaks the column norms, which the evolver must
// then catch as a conservation breach; this is the test hook for exit code 2.
Schedule with_fault(Schedule inner, const FaultInjection& fault);

}  // namespace sigq
