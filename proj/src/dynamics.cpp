#include "sigq/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string_view>
#include <utility>

namespace sigq {

StepOperator::StepOperator(SkipLabelCheck, SemiUnitaryMatrix block, std::size_t passthrough,
                           std::vector<std::string> source_labels,
                           std::vector<std::string> target_labels)
    : block_(std::move(block)),
      passthrough_(passthrough),
      source_labels_(std::move(source_labels)),
      target_labels_(std::move(target_labels)) {
  if (block_.cols() + passthrough_ != source_labels_.size())
    throw ShapeError("step operator: block cols " + std::to_string(block_.cols()) +
                     " + passthrough " + std::to_string(passthrough_) +
                     " does not match source rank " + std::to_string(source_labels_.size()));
  if (block_.rows() + passthrough_ != target_labels_.size())
    throw ShapeError("step operator: block rows " + std::to_string(block_.rows()) +
                     " + passthrough " + std::to_string(passthrough_) +
                     " does not match target rank " + std::to_string(target_labels_.size()));
}

StepOperator::StepOperator(SemiUnitaryMatrix block, std::size_t passthrough,
                           std::vector<std::string> source_labels,
                           std::vector<std::string> target_labels)
    : StepOperator(SkipLabelCheck{}, std::move(block), passthrough, std::move(source_labels),
                   std::move(target_labels)) {
  std::vector<std::string_view> seen;
  for (const auto* labels : {&source_labels_, &target_labels_}) {
    seen.assign(labels->begin(), labels->end());
    std::sort(seen.begin(), seen.end());
    const auto dup = std::adjacent_find(seen.begin(), seen.end());
    if (dup != seen.end())
      throw ArgumentError("step operator: duplicate label '" + std::string(*dup) + "'");
  }
}

namespace detail {
StepOperator step_operator_unchecked(SemiUnitaryMatrix block, std::size_t passthrough,
                                     std::vector<std::string> source_labels,
                                     std::vector<std::string> target_labels) {
  return StepOperator(StepOperator::SkipLabelCheck{}, std::move(block), passthrough,
                      std::move(source_labels), std::move(target_labels));
}
}  // namespace detail

ComplexMatrix StepOperator::full_matrix() const {
  ComplexMatrix m(target_rank(), source_rank());
  const auto& b = block_.matrix();
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m.at(i, j) = b.at(i, j);
  for (std::size_t k = 0; k < passthrough_; ++k)
    m.at(b.rows() + k, b.cols() + k) = Complex{1.0, 0.0};
  return m;
}

SemiUnitaryMatrix StepOperator::full_semi_unitary() const {
  return SemiUnitaryMatrix(full_matrix(), block_.tolerance());
}

std::vector<Complex> step(const std::vector<Complex>& state, const StepOperator& op) {
  if (state.size() != op.source_rank())
    throw ShapeError("step: state of length " + std::to_string(state.size()) +
                     " does not match source rank " + std::to_string(op.source_rank()));
  const std::size_t h = op.block().cols();
  std::vector<Complex> head(state.begin(), state.begin() + static_cast<std::ptrdiff_t>(h));
  std::vector<Complex> out = op.block().apply(head);
  out.resize(op.target_rank(), Complex{0.0, 0.0});
  for (std::size_t k = 0; k < op.passthrough(); ++k) out[op.block().rows() + k] = state[h + k];
  return out;
}

Trajectory::Trajectory(std::vector<std::string> tracked_labels, bool verbose)
    : tracked_labels_(std::move(tracked_labels)), verbose_(verbose) {}

const TrajectoryStep& Trajectory::at(int n) const {
  if (n < 0 || static_cast<std::size_t>(n) >= steps_.size())
    throw LookupError("trajectory has no step " + std::to_string(n));
  return steps_[static_cast<std::size_t>(n)];
}

double Trajectory::channel_probability(std::string_view label, int n) const {
  const TrajectoryStep& s = at(n);
  for (std::size_t i = 0; i < tracked_labels_.size(); ++i)
    if (tracked_labels_[i] == label) return std::norm(s.tracked_amplitudes[i]);
  if (verbose_) {
    for (std::size_t i = 0; i < s.full_labels.size(); ++i)
      if (s.full_labels[i] == label) return std::norm(s.full_amplitudes[i]);
    throw LookupError("no channel '" + std::string(label) + "' at step " + std::to_string(n));
  }
  throw LookupError("channel '" + std::string(label) +
                    "' is not tracked; per-channel history needs the verbose flag");
}

void Trajectory::append(TrajectoryStep step) { steps_.push_back(std::move(step)); }

double channel_probability(const Trajectory& traj, std::string_view label, int n) {
  return traj.channel_probability(label, n);
}

namespace {

// One-signal labstate to a slot-ordered amplitude vector.
std::vector<Complex> one_signal_vector(const Labstate& s) {
  std::vector<Complex> amps(s.net().rank(), Complex{0.0, 0.0});
  for (const auto& [key, amp] : s.amplitudes()) amps[key.single_slot()] = amp;
  return amps;
}

}  // namespace

Trajectory evolve(const Labstate& initial, const Schedule& schedule, int n_steps, double tau,
                  const EvolveOptions& opts) {
  if (n_steps < 0) throw ArgumentError("evolve: n_steps must be nonnegative");
  if (!(tau > 0.0)) throw ArgumentError("evolve: tau must be positive");
  if (!initial.is_one_signal())
    throw SectorError("evolve: initial state must lie in the one-signal class");
  if (!initial.is_normalized())
    throw ValidationError("evolve: initial state norm deviates from 1 by more than " +
                          std::to_string(kStateNormTol));

  std::vector<std::string> labels = initial.net().slot_labels();
  std::vector<Complex> amps = one_signal_vector(initial);
  // Pin the tracked set now: labels grows as channels open, and tracking the
  // live net would cost quadratic work and memory on long decay runs.
  const std::vector<std::string> tracked = opts.tracked.empty() ? labels : opts.tracked;

  Trajectory traj(tracked, opts.verbose);

  auto record = [&](int n) {
    TrajectoryStep rec;
    rec.n = n;
    rec.t_seconds = static_cast<double>(n) * tau;
    rec.tracked_amplitudes.reserve(tracked.size());
    std::vector<bool> is_tracked(amps.size(), false);
    for (const auto& want : tracked) {
      std::size_t pos = labels.size();
      for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == want) {
          pos = i;
          break;
        }
      if (pos == labels.size()) {
        // Channel not open at this step; it carries no amplitude yet.
        rec.tracked_amplitudes.push_back(Complex{0.0, 0.0});
        continue;
      }
      is_tracked[pos] = true;
      rec.tracked_amplitudes.push_back(amps[pos]);
    }
    double total = 0.0, untracked = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
      const double p = std::norm(amps[i]);
      total += p;
      if (!is_tracked[i]) untracked += p;
    }
    rec.cumulative_decayed = untracked;
    rec.conservation_residual = std::abs(total - 1.0);
    if (rec.conservation_residual > opts.breach_threshold)
      throw NumericIntegrityError("probability conservation breached at step " +
                                      std::to_string(n) + ": residual " +
                                      std::to_string(rec.conservation_residual),
                                  n, rec.conservation_residual);
    if (opts.verbose) {
      rec.full_amplitudes = amps;
      rec.full_labels = labels;
    }
    traj.append(std::move(rec));
  };

  record(0);
  for (int k = 1; k <= n_steps; ++k) {
    const StepOperator op = schedule(k);
    if (op.source_rank() != labels.size())
      throw ScheduleError("schedule step " + std::to_string(k) + " expects rank " +
                              std::to_string(op.source_rank()) + " but the state has rank " +
                              std::to_string(labels.size()), k);
    if (op.source_labels() != labels)
      throw ScheduleError("schedule step " + std::to_string(k) +
                              " source labels do not match the evolving net", k);
    amps = step(amps, op);
    labels = op.target_labels();
    record(k);
  }
  return traj;
}

}  // namespace sigq
