#include "cobos/ansatz.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numeric>

#include "cobos/errors.hpp"
#include "phase.hpp"

namespace cobos {

namespace {

using FullTerms = std::map<Mask, Complex>;  // packed FullConfig -> amplitude
using PairTerms = std::map<Mask, Complex>;

Mask block_mask(int start, int length, int d) {
  Mask m = 0;
  for (int i = 0; i < length; ++i) m |= Mask{1} << ((start + i) % d);
  return m;
}

StateVector densify_pair(int d, int pairs, const PairTerms& terms) {
  auto basis = Basis::pair(d, pairs);
  std::vector<Complex> amps(basis->size());
  for (const auto& [mask, value] : terms) amps[*basis->index_of(mask)] += value;
  return StateVector(std::move(basis), std::move(amps));
}

StateVector normalized_or_throw(const StateVector& s, const char* what) {
  if (s.norm() < 1e-14) throw DomainError(std::string(what) + ": state vanishes");
  return with_phase_convention(s.normalized());
}

}  // namespace

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) throw DomainError("partition must have at least one part");
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] < 1) throw DomainError("partition parts must be >= 1");
    if (i > 0 && parts_[i] > parts_[i - 1])
      throw DomainError("partition parts must be non-increasing");
  }
}

Partition Partition::parse(std::string_view text) {
  std::vector<int> parts;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find_first_of("+,", pos), text.size());
    const std::string_view token = text.substr(pos, end - pos);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size())
      throw DomainError("cannot parse partition '" + std::string(text) + "'");
    parts.push_back(value);
    pos = end + 1;
  }
  return Partition(std::move(parts));
}

int Partition::total() const noexcept { return std::accumulate(parts_.begin(), parts_.end(), 0); }

int Partition::singles() const noexcept {
  return static_cast<int>(std::count(parts_.begin(), parts_.end(), 1));
}

std::string Partition::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i > 0) out += '+';
    out += std::to_string(parts_[i]);
  }
  return out;
}

StateVector with_phase_convention(const StateVector& state) {
  for (std::size_t i = 0; i < state.size(); ++i) {
    const Complex a = state[i];
    if (a == Complex{}) continue;
    const Complex phase = std::conj(a) / std::abs(a);
    std::vector<Complex> amps(state.amplitudes().begin(), state.amplitudes().end());
    for (auto& x : amps) x *= phase;
    amps[i] = std::abs(a);  // exactly real, free of rounding in a * conj(a)
    return StateVector(state.basis_ptr(), std::move(amps));
  }
  return state;
}

StateVector to_pair_sector(const StateVector& full_state) {
  return with_phase_convention(full_to_pair(full_state));
}

StateVector build_c_sr(int d, int s, int r, int power) {
  if (d < 1 || d > kMaxFullSites) throw CapacityError("build_c_sr: d out of range");
  if (s < 0 || s >= d || r < 0 || r >= d) throw DomainError("build_c_sr: require 0 <= s, r < d");
  if (power < 0 || power > d) throw DomainError("build_c_sr: require 0 <= N <= d");

  FullTerms terms{{Basis::pack(FullConfig{0, 0}), Complex{1.0, 0.0}}};
  const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(d));
  for (int step = 0; step < power; ++step) {
    FullTerms next;
    for (const auto& [key, value] : terms) {
      const FullConfig c = Basis::unpack(key);
      for (int k = 0; k < d; ++k) {
        // a^dagger_k b^dagger_{k+s}: b acts first.
        const auto with_b = apply_fermion_op(Species::b, Ladder::create, (k + s) % d, c);
        if (with_b.annihilated()) continue;
        const auto with_a = apply_fermion_op(Species::a, Ladder::create, k, with_b.config);
        if (with_a.annihilated()) continue;
        next[Basis::pack(with_a.config)] +=
            value * inv_sqrt_d * detail::unit_phase(static_cast<long long>(k) * r, d) *
            static_cast<double>(with_b.sign * with_a.sign);
      }
    }
    terms = std::move(next);
  }

  auto basis = Basis::full(d, power, power);
  std::vector<Complex> amps(basis->size());
  for (const auto& [key, value] : terms) amps[*basis->index_of(key)] += value;

  // chi_N N! = N! d! / (d^N (d - N)!)
  double norm2 = 1.0;
  for (int i = 0; i < power; ++i) norm2 *= static_cast<double>(i + 1) * (d - i) / d;
  for (auto& a : amps) a /= std::sqrt(norm2);
  return with_phase_convention(StateVector(std::move(basis), std::move(amps)));
}

StateVector build_q_sr(int d, int s, int r) {
  if (d < 2 || d > kMaxPairSites) throw CapacityError("build_q_sr: d out of range");
  if (d % 2 != 0) throw DomainError("build_q_sr: d must be even");
  if (s == 0) throw DomainError("build_q_sr: s = 0 is annihilated by pair exclusion");
  if (s < 1 || s > d / 2) throw DomainError("build_q_sr: require 1 <= s <= d/2");
  if (r < 0 || r >= d) throw DomainError("build_q_sr: require 0 <= r < d");
  PairTerms terms;
  const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(d));
  for (int k = 0; k < d; ++k)
    terms[(Mask{1} << k) | (Mask{1} << ((k + s) % d))] +=
        inv_sqrt_d * detail::unit_phase(static_cast<long long>(k) * r, d);
  const StateVector raw = densify_pair(d, 2, terms);
  if (2 * s != d) return with_phase_convention(raw);
  return normalized_or_throw(raw, "build_q_sr at s = d/2 with odd r");
}

StateVector build_block(int d, int M) {
  if (d < 1 || d > kMaxPairSites) throw CapacityError("build_block: d out of range");
  if (M < 1 || M > d) throw DomainError("build_block: require 1 <= M <= d");
  PairTerms terms;
  for (int k = 0; k < d; ++k) terms[block_mask(k, M, d)] += 1.0;
  return normalized_or_throw(densify_pair(d, M, terms), "build_block");
}

PartitionState build_partition_state(int d, const Partition& partition) {
  if (d < 1 || d > kMaxPairSites) throw CapacityError("build_partition_state: d out of range");
  const int n = partition.total();
  if (n > d) throw DomainError("build_partition_state: sum of parts exceeds d");

  PairTerms terms{{Mask{0}, Complex{1.0, 0.0}}};
  const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(d));
  for (const int M : partition.parts()) {
    PairTerms next;
    for (const auto& [mask, value] : terms)
      for (int k = 0; k < d; ++k) {
        const Mask block = block_mask(k, M, d);
        if ((mask & block) == 0) next[mask | block] += value * inv_sqrt_d;
      }
    terms = std::move(next);
  }
  if (terms.empty()) throw DomainError("build_partition_state: every term is Pauli-annihilated");
  const StateVector raw = densify_pair(d, n, terms);
  const double norm = raw.norm();
  if (norm < 1e-14) throw DomainError("build_partition_state: state vanishes");
  return {with_phase_convention(raw.normalized()), 1.0 / (norm * norm)};
}

}  // namespace cobos
