#include "sigq/signal.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <string>
#include <utility>

namespace sigq {

namespace {

std::map<BasisSignal, Complex> pruned(std::map<BasisSignal, Complex> amps) {
  for (auto it = amps.begin(); it != amps.end();) {
    if (std::abs(it->second) < kAmplitudePrune)
      it = amps.erase(it);
    else
      ++it;
  }
  return amps;
}

}  // namespace

HeisenbergNet::HeisenbergNet(int time_index, std::vector<std::string> slot_labels)
    : time_index_(time_index), slot_labels_(std::move(slot_labels)) {
  if (time_index_ < 0) throw ArgumentError("net time index must be nonnegative");
  std::set<std::string> seen;
  for (const auto& label : slot_labels_)
    if (!seen.insert(label).second)
      throw ArgumentError("duplicate slot label '" + label + "' in net");
}

std::optional<std::size_t> HeisenbergNet::slot_index(std::string_view label) const {
  for (std::size_t i = 0; i < slot_labels_.size(); ++i)
    if (slot_labels_[i] == label) return i;
  return std::nullopt;
}

BasisSignal::BasisSignal(std::size_t rank)
    : rank_(rank), words_((rank + 63) / 64, 0) {}

BasisSignal BasisSignal::single(std::size_t rank, std::size_t slot) {
  return BasisSignal(rank).with_bit_set(slot);
}

BasisSignal BasisSignal::from_index(std::size_t rank, std::uint64_t index) {
  if (rank > 63) throw OracleSizeError("dense index only defined up to rank 63");
  if (rank < 64 && index >> rank)
    throw ArgumentError("index " + std::to_string(index) + " out of range for rank " +
                        std::to_string(rank));
  BasisSignal s(rank);
  if (!s.words_.empty()) s.words_[0] = index;
  return s;
}

void BasisSignal::check_slot(std::size_t slot) const {
  if (slot >= rank_)
    throw SlotError("slot " + std::to_string(slot) + " out of range for rank " +
                    std::to_string(rank_));
}

bool BasisSignal::bit(std::size_t slot) const {
  check_slot(slot);
  return (words_[slot / 64] >> (slot % 64)) & 1u;
}

BasisSignal BasisSignal::with_bit_set(std::size_t slot) const {
  check_slot(slot);
  BasisSignal out = *this;
  out.words_[slot / 64] |= std::uint64_t{1} << (slot % 64);
  return out;
}

BasisSignal BasisSignal::with_bit_cleared(std::size_t slot) const {
  check_slot(slot);
  BasisSignal out = *this;
  out.words_[slot / 64] &= ~(std::uint64_t{1} << (slot % 64));
  return out;
}

std::size_t BasisSignal::signal_class() const {
  std::size_t n = 0;
  for (const auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::uint64_t BasisSignal::to_index() const {
  if (rank_ > 63) throw OracleSizeError("dense index only defined up to rank 63");
  return words_.empty() ? 0 : words_[0];
}

std::size_t BasisSignal::single_slot() const {
  if (signal_class() != 1)
    throw SectorError("basis signal carries " + std::to_string(signal_class()) +
                      " raised bits, expected exactly one");
  for (std::size_t w = 0; w < words_.size(); ++w)
    if (words_[w]) return w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w]));
  throw SectorError("unreachable");  // signal_class()==1 guarantees a word above
}

Labstate::Labstate(HeisenbergNet net, std::map<BasisSignal, Complex> amplitudes)
    : net_(std::move(net)), amplitudes_(pruned(std::move(amplitudes))) {
  for (const auto& [key, amp] : amplitudes_) {
    if (key.rank() != net_.rank())
      throw NetError("basis signal of rank " + std::to_string(key.rank()) +
                     " cannot live on a net of rank " + std::to_string(net_.rank()));
    if (!std::isfinite(amp.real()) || !std::isfinite(amp.imag()))
      throw ValidationError("labstate has a non-finite amplitude");
  }
}

Complex Labstate::amplitude(const BasisSignal& key) const {
  const auto it = amplitudes_.find(key);
  return it == amplitudes_.end() ? Complex{0.0, 0.0} : it->second;
}

double Labstate::squared_norm() const {
  double s = 0.0;
  for (const auto& [key, amp] : amplitudes_) s += std::norm(amp);
  return s;
}

double Labstate::norm() const { return std::sqrt(squared_norm()); }

bool Labstate::is_normalized(double tol) const { return std::abs(norm() - 1.0) <= tol; }

bool Labstate::is_one_signal() const {
  for (const auto& [key, amp] : amplitudes_)
    if (key.signal_class() != 1) return false;
  return true;
}

Labstate void_state(const HeisenbergNet& net) {
  std::map<BasisSignal, Complex> amps;
  amps.emplace(BasisSignal(net.rank()), Complex{1.0, 0.0});
  return Labstate(net, std::move(amps));
}

Labstate apply_create(std::size_t slot, const Labstate& s) {
  if (slot >= s.net().rank())
    throw SlotError("slot " + std::to_string(slot) + " out of range for rank " +
                    std::to_string(s.net().rank()));
  std::map<BasisSignal, Complex> out;
  for (const auto& [key, amp] : s.amplitudes())
    if (!key.bit(slot)) out.emplace(key.with_bit_set(slot), amp);
  return Labstate(s.net(), std::move(out));
}

Labstate apply_annihilate(std::size_t slot, const Labstate& s) {
  if (slot >= s.net().rank())
    throw SlotError("slot " + std::to_string(slot) + " out of range for rank " +
                    std::to_string(s.net().rank()));
  std::map<BasisSignal, Complex> out;
  for (const auto& [key, amp] : s.amplitudes())
    if (key.bit(slot)) out.emplace(key.with_bit_cleared(slot), amp);
  return Labstate(s.net(), std::move(out));
}

Labstate combine(Complex c1, const Labstate& s1, Complex c2, const Labstate& s2) {
  if (s1.net().rank() != s2.net().rank())
    throw NetError("cannot combine labstates of ranks " + std::to_string(s1.net().rank()) +
                   " and " + std::to_string(s2.net().rank()));
  std::map<BasisSignal, Complex> out;
  for (const auto& [key, amp] : s1.amplitudes()) out[key] += c1 * amp;
  for (const auto& [key, amp] : s2.amplitudes()) out[key] += c2 * amp;
  return Labstate(s1.net(), std::move(out));
}

Complex inner_product(const Labstate& s1, const Labstate& s2) {
  if (s1.net().rank() != s2.net().rank())
    throw NetError("inner product requires equal ranks, got " +
                   std::to_string(s1.net().rank()) + " and " + std::to_string(s2.net().rank()));
  Complex acc{0.0, 0.0};
  for (const auto& [key, amp] : s1.amplitudes()) {
    const auto it = s2.amplitudes().find(key);
    if (it != s2.amplitudes().end()) acc += std::conj(amp) * it->second;
  }
  return acc;
}

std::vector<Complex> dense_oracle_embed(const Labstate& s, std::size_t max_rank) {
  const std::size_t r = s.net().rank();
  if (r > max_rank || max_rank > kOracleRankCap)
    throw OracleSizeError("dense embedding of rank " + std::to_string(r) +
                          " exceeds the oracle cap of " + std::to_string(std::min(max_rank, kOracleRankCap)));
  std::vector<Complex> dense(std::size_t{1} << r, Complex{0.0, 0.0});
  for (const auto& [key, amp] : s.amplitudes()) dense[key.to_index()] = amp;
  return dense;
}

Labstate labstate_from_dense(const HeisenbergNet& net, const std::vector<Complex>& dense,
                             std::size_t max_rank) {
  const std::size_t r = net.rank();
  if (r > max_rank || max_rank > kOracleRankCap)
    throw OracleSizeError("dense state of rank " + std::to_string(r) +
                          " exceeds the oracle cap of " + std::to_string(std::min(max_rank, kOracleRankCap)));
  if (dense.size() != (std::size_t{1} << r))
    throw ArgumentError("dense vector of length " + std::to_string(dense.size()) +
                        " does not match rank " + std::to_string(r));
  std::map<BasisSignal, Complex> amps;
  for (std::size_t idx = 0; idx < dense.size(); ++idx)
    if (std::abs(dense[idx]) >= kAmplitudePrune)
      amps.emplace(BasisSignal::from_index(r, idx), dense[idx]);
  return Labstate(net, std::move(amps));
}

std::vector<Complex> dense_apply_gate(std::size_t slot, const std::array<Complex, 4>& gate,
                                      const std::vector<Complex>& dense) {
  const std::size_t dim = dense.size();
  if (dim == 0 || (dim & (dim - 1)) != 0)
    throw ArgumentError("dense vector length must be a power of two");
  const std::uint64_t mask = std::uint64_t{1} << slot;
  if (mask >= dim) throw SlotError("gate slot " + std::to_string(slot) + " out of range");
  std::vector<Complex> out(dim, Complex{0.0, 0.0});
  for (std::size_t idx = 0; idx < dim; ++idx) {
    if (idx & mask) continue;
    const std::size_t lo = idx, hi = idx | mask;
    out[lo] = gate[0] * dense[lo] + gate[1] * dense[hi];
    out[hi] = gate[2] * dense[lo] + gate[3] * dense[hi];
  }
  return out;
}

Labstate oracle_evolve_one_signal(const SemiUnitaryMatrix& step_matrix, const Labstate& s,
                                  const HeisenbergNet& target_net) {
  const std::size_t r = s.net().rank();
  const std::size_t rp = target_net.rank();
  if (step_matrix.cols() != r)
    throw ShapeError("step matrix with " + std::to_string(step_matrix.cols()) +
                     " columns cannot act on a rank-" + std::to_string(r) + " net");
  if (step_matrix.rows() != rp)
    throw NetError("step matrix with " + std::to_string(step_matrix.rows()) +
                   " rows does not land on a rank-" + std::to_string(rp) + " net");
  if (r > kOracleRankCap || rp > kOracleRankCap)
    throw OracleSizeError("oracle evolution beyond rank " + std::to_string(kOracleRankCap));
  if (!s.is_one_signal())
    throw SectorError("oracle evolution requires a state confined to the one-signal class");

  const auto x = dense_oracle_embed(s);

  // Project out each source-channel amplitude with a dense annihilation.
  std::vector<Complex> coeff(r, Complex{0.0, 0.0});
  for (std::size_t j = 0; j < r; ++j) coeff[j] = dense_apply_gate(j, kLoweringGate, x)[0];

  const auto mapped = step_matrix.apply(coeff);

  // Rebuild on the target net with dense creations against the void; the void
  // sector itself is carried through unchanged.
  std::vector<Complex> out(std::size_t{1} << rp, Complex{0.0, 0.0});
  out[0] = x[0];
  std::vector<Complex> vac(out.size(), Complex{0.0, 0.0});
  vac[0] = Complex{1.0, 0.0};
  for (std::size_t i = 0; i < rp; ++i) {
    const auto basis = dense_apply_gate(i, kRaisingGate, vac);
    for (std::size_t idx = 0; idx < out.size(); ++idx) out[idx] += mapped[i] * basis[idx];
  }
  return labstate_from_dense(target_net, out);
}

}  // namespace sigq
