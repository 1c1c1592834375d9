#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sigq/errors.hpp"
#include "sigq/linalg.hpp"
#include "sigq/types.hpp"

namespace sigq {

// A register of labelled detector qubits frozen at one instant. Rank r spans
// a 2^r basis; slot 0 is the least significant bit of a basis index.
class HeisenbergNet {
 public:
  HeisenbergNet(int time_index, std::vector<std::string> slot_labels);

  int time_index() const { return time_index_; }
  std::size_t rank() const { return slot_labels_.size(); }
  const std::vector<std::string>& slot_labels() const { return slot_labels_; }
  std::optional<std::size_t> slot_index(std::string_view label) const;

 private:
  int time_index_;
  std::vector<std::string> slot_labels_;
};

// One computational basis state of a net: a bit per slot.
class BasisSignal {
 public:
  explicit BasisSignal(std::size_t rank);
  static BasisSignal single(std::size_t rank, std::size_t slot);    // one bit set
  static BasisSignal from_index(std::size_t rank, std::uint64_t index);

  std::size_t rank() const { return rank_; }
  bool bit(std::size_t slot) const;
  BasisSignal with_bit_set(std::size_t slot) const;
  BasisSignal with_bit_cleared(std::size_t slot) const;

  // Number of raised bits; 0 is the void, 1 the one-signal class, and so on.
  std::size_t signal_class() const;

  // Little-endian packed index into a dense 2^rank vector (rank <= 63).
  std::uint64_t to_index() const;

  // Slot of the single raised bit; throws SectorError unless signal_class()==1.
  std::size_t single_slot() const;

  auto operator<=>(const BasisSignal&) const = default;

 private:
  void check_slot(std::size_t slot) const;
  std::size_t rank_;
  std::vector<std::uint64_t> words_;
};

// A sparse assignment of complex amplitudes to basis signals of one net.
// Not forcibly normalized: intermediates of partial maps may carry norm < 1.
class Labstate {
 public:
  Labstate(HeisenbergNet net, std::map<BasisSignal, Complex> amplitudes);

  const HeisenbergNet& net() const { return net_; }
  const std::map<BasisSignal, Complex>& amplitudes() const { return amplitudes_; }

  Complex amplitude(const BasisSignal& key) const;
  double squared_norm() const;
  double norm() const;
  bool is_normalized(double tol = kStateNormTol) const;
  bool is_zero() const { return amplitudes_.empty(); }
  bool is_one_signal() const;  // every carried key has signal_class() == 1

 private:
  HeisenbergNet net_;
  std::map<BasisSignal, Complex> amplitudes_;
};

// All bits lowered, amplitude one.
Labstate void_state(const HeisenbergNet& net);

// Signal creation at a slot: raises the bit where it is lowered, annihilates
// components where it is already raised. Nilpotent; commutes across slots.
Labstate apply_create(std::size_t slot, const Labstate& s);

// Adjoint of apply_create: lowers a raised bit, annihilates the rest.
Labstate apply_annihilate(std::size_t slot, const Labstate& s);

// c1*s1 + c2*s2 over a shared net.
Labstate combine(Complex c1, const Labstate& s1, Complex c2, const Labstate& s2);

// <s1|s2>, conjugate-linear in the first argument. Requires equal ranks.
Complex inner_product(const Labstate& s1, const Labstate& s2);

// Sparse state to a dense 2^rank amplitude vector (bounded by the rank cap).
std::vector<Complex> dense_oracle_embed(const Labstate& s, std::size_t max_rank = kOracleRankCap);

// Inverse of dense_oracle_embed; drops amplitudes below the prune threshold.
Labstate labstate_from_dense(const HeisenbergNet& net, const std::vector<Complex>& dense,
                             std::size_t max_rank = kOracleRankCap);

// Applies a 2x2 gate (row-major: g[0] g[1] / g[2] g[3]) to one slot of a dense
// vector, i.e. the explicit tensor product I x .. x g x .. x I.
std::vector<Complex> dense_apply_gate(std::size_t slot, const std::array<Complex, 4>& gate,
                                      const std::vector<Complex>& dense);

inline constexpr std::array<Complex, 4> kRaisingGate = {Complex{0, 0}, Complex{0, 0},
                                                        Complex{1, 0}, Complex{0, 0}};
inline constexpr std::array<Complex, 4> kLoweringGate = {Complex{0, 0}, Complex{1, 0},
                                                         Complex{0, 0}, Complex{0, 0}};

// Reference implementation of one evolution step on a one-signal state,
// working entirely on dense vectors through tensor-product operators. It
// shares no code with the block fast path, which is the point: the two are
// compared against each other in the crosscheck harness.
Labstate oracle_evolve_one_signal(const SemiUnitaryMatrix& step_matrix, const Labstate& s,
                                  const HeisenbergNet& target_net);

}  // namespace sigq
