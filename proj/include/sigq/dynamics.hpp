#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "sigq/linalg.hpp"
#include "sigq/signal.hpp"

namespace sigq {

class StepOperator;

namespace detail {
// For schedule generators whose label sequences are unique by construction
// (a fixed stem plus distinct indices). Skips the duplicate-label scan, which
// otherwise dominates long runs; shape checks still apply.
StepOperator step_operator_unchecked(SemiUnitaryMatrix block, std::size_t passthrough,
                                     std::vector<std::string> source_labels,
                                     std::vector<std::string> target_labels);
}  // namespace detail

// One evolution step between consecutive nets, acting on the one-signal
// sector. Stored in factored form: a dense semi-unitary head block feeding the
// leading target channels, plus an identity passthrough that carries the
// remaining source channels forward (the null tests on already-fired
// detectors). The implied full matrix is [[B, 0], [0, I]].
class StepOperator {
 public:
  StepOperator(SemiUnitaryMatrix block, std::size_t passthrough,
               std::vector<std::string> source_labels, std::vector<std::string> target_labels);

  const SemiUnitaryMatrix& block() const { return block_; }
  std::size_t passthrough() const { return passthrough_; }
  std::size_t source_rank() const { return source_labels_.size(); }
  std::size_t target_rank() const { return target_labels_.size(); }
  const std::vector<std::string>& source_labels() const { return source_labels_; }
  const std::vector<std::string>& target_labels() const { return target_labels_; }

  // Materialized target_rank x source_rank matrix. O(r^2); meant for
  // validation and composition checks, not the stepping hot path.
  ComplexMatrix full_matrix() const;
  SemiUnitaryMatrix full_semi_unitary() const;

 private:
  struct SkipLabelCheck {};
  StepOperator(SkipLabelCheck, SemiUnitaryMatrix block, std::size_t passthrough,
               std::vector<std::string> source_labels, std::vector<std::string> target_labels);
  friend StepOperator detail::step_operator_unchecked(SemiUnitaryMatrix, std::size_t,
                                                      std::vector<std::string>,
                                                      std::vector<std::string>);

  SemiUnitaryMatrix block_;
  std::size_t passthrough_;
  std::vector<std::string> source_labels_;
  std::vector<std::string> target_labels_;
};

// Applies one step to a one-signal amplitude vector.
std::vector<Complex> step(const std::vector<Complex>& state, const StepOperator& op);

// Yields the operator taking net n-1 to net n, for n = 1..n_steps.
using Schedule = std::function<StepOperator(int)>;

struct EvolveOptions {
  bool verbose = false;                 // retain full per-step amplitude vectors
  std::vector<std::string> tracked;     // empty: track the initial net's labels;
                                        // a channel not yet open reads as zero
  double breach_threshold = kConservationBreach;
};

struct TrajectoryStep {
  int n = 0;
  double t_seconds = 0.0;
  std::vector<Complex> tracked_amplitudes;  // aligned with Trajectory::tracked_labels()
  double cumulative_decayed = 0.0;          // total probability in untracked channels
  double conservation_residual = 0.0;       // |sum of all probabilities - 1|
  std::vector<Complex> full_amplitudes;     // verbose mode only
  std::vector<std::string> full_labels;     // verbose mode only
};

// Per-step record of an evolution. Untracked channels are rolled into the
// cumulative decayed probability, which keeps memory linear in step count;
// verbose mode keeps everything for the runs that need the full history.
class Trajectory {
 public:
  Trajectory(std::vector<std::string> tracked_labels, bool verbose);

  const std::vector<std::string>& tracked_labels() const { return tracked_labels_; }
  bool verbose() const { return verbose_; }
  std::size_t size() const { return steps_.size(); }
  const TrajectoryStep& at(int n) const;

  double channel_probability(std::string_view label, int n) const;

  void append(TrajectoryStep step);

 private:
  std::vector<std::string> tracked_labels_;
  std::vector<TrajectoryStep> steps_;
  bool verbose_;
};

// Drives a normalized one-signal labstate through n_steps schedule steps,
// recording after every step and aborting with NumericIntegrityError if the
// total probability drifts beyond the breach threshold.
Trajectory evolve(const Labstate& initial, const Schedule& schedule, int n_steps, double tau,
                  const EvolveOptions& opts = {});

double channel_probability(const Trajectory& traj, std::string_view label, int n);

}  // namespace sigq
