#include "cobos/fock.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "cobos/errors.hpp"

namespace cobos {

namespace {

Mask low_bits(int n) { return n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1; }

// Ascending-integer rank of a fixed-popcount mask (combinatorial number system).
std::uint64_t colex_rank(Mask mask) {
  std::uint64_t rank = 0;
  int i = 0;
  while (mask != 0) {
    const int p = std::countr_zero(mask);
    rank += binomial(p, i + 1);
    mask &= mask - 1;
    ++i;
  }
  return rank;
}

std::vector<Mask> combinations(int n, int k) {
  std::vector<Mask> out;
  out.reserve(binomial(n, k));
  if (k == 0) {
    out.push_back(0);
    return out;
  }
  Mask v = low_bits(k);
  const Mask limit = Mask{1} << n;
  while (v < limit) {
    out.push_back(v);
    // Gosper's hack: next larger integer with the same popcount.
    const Mask t = v | (v - 1);
    v = (t + 1) | (((~t & -~t) - 1) >> (std::countr_zero(v) + 1));
  }
  return out;
}

Mask rotate(Mask mask, int shift, int sites) {
  if (shift == 0) return mask;
  const Mask all = low_bits(sites);
  return ((mask << shift) | (mask >> (sites - shift))) & all;
}

int parity_sign(int x) { return (x & 1) ? -1 : 1; }

}  // namespace

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / i;
  return r;
}

Basis::Basis(BasisKind kind, int sites, int n_a, int n_b)
    : kind_(kind), sites_(sites), n_a_(n_a), n_b_(n_b) {}

std::shared_ptr<const Basis> Basis::pair(int sites, int pairs) {
  if (sites < 1 || sites > kMaxPairSites)
    throw CapacityError("pair basis supports 1 <= d <= " + std::to_string(kMaxPairSites) +
                        ", got d = " + std::to_string(sites));
  if (pairs < 0 || pairs > sites)
    throw DomainError("pair count " + std::to_string(pairs) + " outside [0, d]");
  if (binomial(sites, pairs) > kMaxBasisSize)
    throw CapacityError("pair basis dimension exceeds the size cap");
  auto b = std::shared_ptr<Basis>(new Basis(BasisKind::pair, sites, pairs, pairs));
  b->keys_ = combinations(sites, pairs);
  return b;
}

std::shared_ptr<const Basis> Basis::full(int sites, int n_a, int n_b) {
  if (sites < 1 || sites > kMaxFullSites)
    throw CapacityError("full basis supports 1 <= d <= " + std::to_string(kMaxFullSites) +
                        ", got d = " + std::to_string(sites));
  if (n_a < 0 || n_b < 0 || n_a > sites || n_b > sites)
    throw DomainError("species counts must lie in [0, d]");
  const auto ca = binomial(sites, n_a);
  const auto cb = binomial(sites, n_b);
  if (ca * cb > kMaxBasisSize) throw CapacityError("full basis dimension exceeds the size cap");
  auto b = std::shared_ptr<Basis>(new Basis(BasisKind::full, sites, n_a, n_b));
  const auto as = combinations(sites, n_a);
  const auto bs = combinations(sites, n_b);
  b->size_b_ = cb;
  b->keys_.reserve(ca * cb);
  for (Mask ma : as)
    for (Mask mb : bs) b->keys_.push_back(pack({ma, mb}));
  return b;
}

std::optional<std::size_t> Basis::index_of(Mask key) const noexcept {
  if (kind_ == BasisKind::pair) {
    if ((key & ~low_bits(sites_)) != 0 || std::popcount(key) != n_a_) return std::nullopt;
    return colex_rank(key);
  }
  const FullConfig c = unpack(key);
  const Mask all = low_bits(sites_);
  if ((c.mask_a & ~all) != 0 || (c.mask_b & ~all) != 0) return std::nullopt;
  if (std::popcount(c.mask_a) != n_a_ || std::popcount(c.mask_b) != n_b_) return std::nullopt;
  return colex_rank(c.mask_a) * size_b_ + colex_rank(c.mask_b);
}

OpResult<PairConfig> apply_pair_op(PairOp op, int site, PairConfig config) noexcept {
  const Mask bit = Mask{1} << site;
  const bool occupied = (config.mask & bit) != 0;
  switch (op) {
    case PairOp::create:
      if (occupied) return {};
      return {{config.mask | bit}, 1};
    case PairOp::annihilate:
      if (!occupied) return {};
      return {{config.mask & ~bit}, 1};
    case PairOp::number:
      if (!occupied) return {};
      return {config, 1};
  }
  return {};
}

OpResult<FullConfig> apply_fermion_op(Species species, Ladder ladder, int mode,
                                      FullConfig config) noexcept {
  const Mask bit = Mask{1} << mode;
  const Mask below = bit - 1;
  Mask& target = species == Species::a ? config.mask_a : config.mask_b;
  const bool occupied = (target & bit) != 0;
  if ((ladder == Ladder::create) == occupied) return {};
  int passed = 0;
  if (species == Species::a) {
    passed = std::popcount(config.mask_a & below);
  } else {
    passed = std::popcount(config.mask_a) + std::popcount(config.mask_b & below);
  }
  target ^= bit;
  return {config, parity_sign(passed)};
}

OpResult<Mask> create_mode(int mode, Mask mask) noexcept {
  const Mask bit = Mask{1} << mode;
  if (mask & bit) return {};
  return {mask | bit, parity_sign(std::popcount(mask & (bit - 1)))};
}

int pair_sector_phase(int pairs) noexcept {
  // eta^dagger_k = a^dagger_k b^dagger_k on a state with n pairs picks up (-1)^n.
  return parity_sign((pairs * (pairs - 1) / 2) & 1);
}

StateVector::StateVector(BasisPtr basis, std::vector<Complex> amplitudes)
    : basis_(std::move(basis)), amps_(std::move(amplitudes)) {
  if (!basis_) throw DomainError("state vector requires a basis");
  if (amps_.size() != basis_->size())
    throw DomainError("amplitude count " + std::to_string(amps_.size()) +
                      " does not match basis size " + std::to_string(basis_->size()));
  for (const auto& a : amps_)
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
      throw DomainError("state vector amplitudes must be finite");
}

StateVector StateVector::zeros(BasisPtr basis) {
  const auto n = basis->size();
  return StateVector(std::move(basis), std::vector<Complex>(n));
}

double StateVector::norm() const noexcept {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return std::sqrt(s);
}

bool StateVector::is_normalized() const noexcept { return std::abs(norm() - 1.0) < 1e-12; }

StateVector StateVector::normalized() const {
  const double n = norm();
  if (n == 0.0) throw DomainError("cannot normalize the zero vector");
  return scaled(1.0 / n);
}

StateVector StateVector::scaled(Complex factor) const {
  std::vector<Complex> out(amps_.size());
  std::transform(amps_.begin(), amps_.end(), out.begin(),
                 [factor](Complex a) { return a * factor; });
  return StateVector(basis_, std::move(out));
}

void require_same_space(const Basis& lhs, const Basis& rhs, const char* context) {
  if (!lhs.same_space(rhs)) throw DomainError(std::string(context) + ": basis mismatch");
}

Complex inner_product(const StateVector& bra, const StateVector& ket) {
  require_same_space(bra.basis(), ket.basis(), "inner_product");
  Complex s{};
  const auto a = bra.amplitudes();
  const auto b = ket.amplitudes();
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

StateVector translate(const StateVector& state, int shift) {
  const Basis& basis = state.basis();
  const int d = basis.sites();
  const int s = ((shift % d) + d) % d;
  std::vector<Complex> out(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const Complex amp = state[i];
    if (amp == Complex{}) continue;
    if (basis.kind() == BasisKind::pair) {
      const Mask m = rotate(basis.key(i), s, d);
      out[*basis.index_of(m)] = amp;
    } else {
      const FullConfig c = basis.full_config(i);
      // Operators whose mode wraps past d-1 move ahead of the others in the
      // ascending string: w * (n - w) transpositions per species.
      const Mask wrap = s == 0 ? 0 : ~low_bits(d - s) & low_bits(d);
      const int wa = std::popcount(c.mask_a & wrap);
      const int wb = std::popcount(c.mask_b & wrap);
      const int sign =
          parity_sign(wa * (basis.n_a() - wa)) * parity_sign(wb * (basis.n_b() - wb));
      const FullConfig shifted{rotate(c.mask_a, s, d), rotate(c.mask_b, s, d)};
      out[*basis.index_of(shifted)] = static_cast<double>(sign) * amp;
    }
  }
  return StateVector(state.basis_ptr(), std::move(out));
}

StateVector pair_to_full(const StateVector& pair_state) {
  const Basis& pb = pair_state.basis();
  if (pb.kind() != BasisKind::pair) throw DomainError("pair_to_full expects a pair-basis state");
  auto fb = Basis::full(pb.sites(), pb.pairs(), pb.pairs());
  std::vector<Complex> out(fb->size());
  const double phase = pair_sector_phase(pb.pairs());
  for (std::size_t i = 0; i < pb.size(); ++i) {
    const Mask m = pb.key(i);
    out[*fb->index_of(FullConfig{m, m})] = phase * pair_state[i];
  }
  return StateVector(std::move(fb), std::move(out));
}

StateVector full_to_pair(const StateVector& full_state) {
  const Basis& fb = full_state.basis();
  if (fb.kind() != BasisKind::full || fb.n_a() != fb.n_b())
    throw DomainError("full_to_pair expects a full-basis state with N_A == N_B");
  auto pb = Basis::pair(fb.sites(), fb.n_a());
  std::vector<Complex> out(pb->size());
  const double phase = pair_sector_phase(fb.n_a());
  for (std::size_t i = 0; i < pb->size(); ++i) {
    const Mask m = pb->key(i);
    out[i] = phase * full_state[*fb.index_of(FullConfig{m, m})];
  }
  return StateVector(std::move(pb), std::move(out));
}

}  // namespace cobos
