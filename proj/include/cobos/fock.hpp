#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace cobos {

using Mask = std::uint64_t;
using Complex = std::complex<double>;

inline constexpr int kMaxPairSites = 30;
inline constexpr int kMaxFullSites = 16;
inline constexpr std::size_t kMaxBasisSize = std::size_t{1} << 26;

/// Hard-core pair configuration: bit k set means eta^dagger_k was applied.
struct PairConfig {
  Mask mask = 0;
  friend bool operator==(const PairConfig&, const PairConfig&) = default;
};

/// Two-species configuration. The Fock state it labels is
///   a^dagger_{i1} a^dagger_{i2} ... b^dagger_{j1} b^dagger_{j2} ... |0>
/// with i1 < i2 < ... and j1 < j2 < ... (all A operators first).
struct FullConfig {
  Mask mask_a = 0;
  Mask mask_b = 0;
  friend bool operator==(const FullConfig&, const FullConfig&) = default;
};

enum class BasisKind { pair, full };

/// Ordered enumeration of fixed-particle-number configurations. Members are
/// stored as packed integer keys in strictly ascending order (pair: the mask;
/// full: mask_a in the high word, mask_b in the low word).
class Basis {
 public:
  static std::shared_ptr<const Basis> pair(int sites, int pairs);
  static std::shared_ptr<const Basis> full(int sites, int n_a, int n_b);

  BasisKind kind() const noexcept { return kind_; }
  int sites() const noexcept { return sites_; }
  int n_a() const noexcept { return n_a_; }
  int n_b() const noexcept { return n_b_; }
  /// Number of pairs in a pair basis (equal to n_a() there).
  int pairs() const noexcept { return n_a_; }
  std::size_t size() const noexcept { return keys_.size(); }

  std::span<const Mask> keys() const noexcept { return keys_; }
  Mask key(std::size_t i) const { return keys_[i]; }
  PairConfig pair_config(std::size_t i) const { return {keys_[i]}; }
  FullConfig full_config(std::size_t i) const { return unpack(keys_[i]); }

  /// Position of a packed key, or nullopt when it is not a member.
  std::optional<std::size_t> index_of(Mask key) const noexcept;
  std::optional<std::size_t> index_of(FullConfig c) const noexcept {
    return index_of(pack(c));
  }

  static Mask pack(FullConfig c) noexcept { return (c.mask_a << 32) | c.mask_b; }
  static FullConfig unpack(Mask key) noexcept {
    return {key >> 32, key & 0xffffffffULL};
  }

  /// Same kind, site count and particle content.
  bool same_space(const Basis& other) const noexcept {
    return kind_ == other.kind_ && sites_ == other.sites_ && n_a_ == other.n_a_ &&
           n_b_ == other.n_b_;
  }

 private:
  Basis(BasisKind kind, int sites, int n_a, int n_b);

  BasisKind kind_;
  int sites_;
  int n_a_;
  int n_b_;
  std::uint64_t size_b_ = 1;  // C(sites, n_b), stride of the A rank
  std::vector<Mask> keys_;
};

using BasisPtr = std::shared_ptr<const Basis>;

std::uint64_t binomial(int n, int k);

/// Result of an elementary operator on a basis configuration. sign == 0 marks
/// an annihilated result (Pauli blocking or annihilating an empty mode).
template <typename Config>
struct OpResult {
  Config config{};
  int sign = 0;
  bool annihilated() const noexcept { return sign == 0; }
};

enum class PairOp { create, annihilate, number };
enum class Species { a, b };
enum class Ladder { create, annihilate };

/// eta^dagger_k, eta_k or n_k on a hard-core pair configuration. Pairs commute,
/// so a surviving result always carries phase +1.
OpResult<PairConfig> apply_pair_op(PairOp op, int site, PairConfig config) noexcept;

/// a^dagger_k, a_k, b^dagger_k or b_k with the sign fixed by the
/// A-then-B ascending operator ordering of FullConfig.
OpResult<FullConfig> apply_fermion_op(Species species, Ladder ladder, int mode,
                                      FullConfig config) noexcept;

/// Single-species creation operator on an ascending-ordered mode string.
OpResult<Mask> create_mode(int mode, Mask mask) noexcept;

/// Phase of eta^dagger_{k1} ... eta^dagger_{kN} |0> relative to the canonical
/// FullConfig state with mask_a == mask_b; depends only on N.
int pair_sector_phase(int pairs) noexcept;

/// Complex amplitudes over a basis. Immutable after construction.
class StateVector {
 public:
  StateVector(BasisPtr basis, std::vector<Complex> amplitudes);
  static StateVector zeros(BasisPtr basis);

  const Basis& basis() const noexcept { return *basis_; }
  const BasisPtr& basis_ptr() const noexcept { return basis_; }
  std::span<const Complex> amplitudes() const noexcept { return amps_; }
  Complex operator[](std::size_t i) const { return amps_[i]; }
  std::size_t size() const noexcept { return amps_.size(); }

  double norm() const noexcept;
  bool is_normalized() const noexcept;
  StateVector normalized() const;
  StateVector scaled(Complex factor) const;

 private:
  BasisPtr basis_;
  std::vector<Complex> amps_;
};

/// <bra|ket>, conjugate-linear in bra. Throws DomainError on basis mismatch.
Complex inner_product(const StateVector& bra, const StateVector& ket);

/// Applies the lattice translation k -> (k + shift) mod d to every occupied site.
StateVector translate(const StateVector& state, int shift);

/// Pair-basis state mapped into FullBasis(d, N, N) as the physical state
/// sum_x psi_x eta^dagger_{x} |0>.
StateVector pair_to_full(const StateVector& pair_state);

/// Component of a full-basis state inside the doubly-occupied sector, expressed
/// in PairBasis(d, N). Not renormalized.
StateVector full_to_pair(const StateVector& full_state);

void require_same_space(const Basis& lhs, const Basis& rhs, const char* context);

}  // namespace cobos
