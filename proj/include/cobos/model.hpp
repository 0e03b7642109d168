#pragma once

#include <bit>
#include <cstddef>
#include <variant>

#include "cobos/fock.hpp"
#include "cobos/sparse_operator.hpp"

namespace cobos {

/// Extended Hubbard parameters on a periodic chain of `sites` sites.
/// For the pair (effective) model only n_a is used as the pair count.
struct ModelParams {
  double J = 1.0;
  double U = 0.0;
  double gamma = 0.0;
  int sites = 2;
  int n_a = 1;
  int n_b = 1;

  /// Effective pair hopping 2 J^2 / U.
  double jbar() const;
  /// Effective pair-pair binding 2 (gamma - jbar).
  double gammabar() const;
  /// Dimensionless interaction gamma U / J^2 used by the sweeps.
  double reduced_gamma() const;
  /// Energy of the pair sector dropped from the effective model: -N (U + 4 J^2 / U).
  double effective_constant() const;
};

/// Throws DomainError unless energies are finite and non-negative and d >= 2.
void validate(const ModelParams& p);

/// Bitmask rules of H = J H0 + U Hp + gamma Hnn on FullBasis:
///   H0  = -sum_k (a+_k a_{k+1} + b+_k b_{k+1} + h.c.)
///   Hp  = -sum_k n^a_k n^b_k
///   Hnn = -sum_k (n^a_k n^b_{k+1} + n^a_{k+1} n^b_k)
/// with k + 1 taken mod d.
class ExtendedHubbardRules {
 public:
  ExtendedHubbardRules(const ModelParams& params, BasisPtr basis);

  const BasisPtr& basis() const noexcept { return basis_; }

  /// Calls emit(row, value) for every nonzero H[row, col].
  template <typename Emit>
  void act(std::size_t col, Emit&& emit) const {
    const FullConfig c = basis_->full_config(col);
    const double diag = -U_ * std::popcount(c.mask_a & c.mask_b) -
                        gamma_ * (std::popcount(c.mask_a & rotr1(c.mask_b)) +
                                  std::popcount(c.mask_b & rotr1(c.mask_a)));
    if (diag != 0.0) emit(col, Complex{diag, 0.0});
    if (J_ == 0.0) return;
    for (int i = 0; i < d_; ++i) {
      const int j = (i + 1) % d_;
      hop(Species::a, i, j, c, emit);
      hop(Species::a, j, i, c, emit);
      hop(Species::b, i, j, c, emit);
      hop(Species::b, j, i, c, emit);
    }
  }

 private:
  Mask rotr1(Mask m) const noexcept {
    return ((m >> 1) | ((m & 1) << (d_ - 1))) & ((Mask{1} << d_) - 1);
  }

  template <typename Emit>
  void hop(Species s, int to, int from, FullConfig c, Emit& emit) const {
    const auto removed = apply_fermion_op(s, Ladder::annihilate, from, c);
    if (removed.annihilated()) return;
    const auto added = apply_fermion_op(s, Ladder::create, to, removed.config);
    if (added.annihilated()) return;
    emit(*basis_->index_of(added.config),
         Complex{-J_ * removed.sign * added.sign, 0.0});
  }

  BasisPtr basis_;
  int d_;
  double J_;
  double U_;
  double gamma_;
};

/// Hard-core pair chain H = -hop sum_k (eta+_k eta_{k+1} + h.c.) - bond sum_k n_k n_{k+1}.
class PairChainRules {
 public:
  PairChainRules(double hop, double bond, BasisPtr basis);

  const BasisPtr& basis() const noexcept { return basis_; }

  template <typename Emit>
  void act(std::size_t col, Emit&& emit) const {
    const PairConfig c = basis_->pair_config(col);
    const double diag = -bond_ * std::popcount(c.mask & rotr1(c.mask));
    if (diag != 0.0) emit(col, Complex{diag, 0.0});
    if (hop_ == 0.0) return;
    for (int i = 0; i < d_; ++i) {
      const int j = (i + 1) % d_;
      move(i, j, c, emit);
      move(j, i, c, emit);
    }
  }

 private:
  Mask rotr1(Mask m) const noexcept {
    return ((m >> 1) | ((m & 1) << (d_ - 1))) & ((Mask{1} << d_) - 1);
  }

  template <typename Emit>
  void move(int to, int from, PairConfig c, Emit& emit) const {
    const auto removed = apply_pair_op(PairOp::annihilate, from, c);
    if (removed.annihilated()) return;
    const auto added = apply_pair_op(PairOp::create, to, removed.config);
    if (added.annihilated()) return;
    emit(*basis_->index_of(added.config.mask), Complex{-hop_, 0.0});
  }

  BasisPtr basis_;
  int d_;
  double hop_;
  double bond_;
};

using HamiltonianRules = std::variant<ExtendedHubbardRules, PairChainRules>;

HamiltonianRules full_hamiltonian_rules(const ModelParams& params);
HamiltonianRules effective_hamiltonian_rules(const ModelParams& params);

SparseOperator assemble(const HamiltonianRules& rules);

SparseOperator build_full_hamiltonian(const ModelParams& params);

/// -(2J^2/U) sum (eta+_k eta_{k+1} + h.c.) - (2 gamma - 4 J^2 / U) sum n_k n_{k+1}
/// on PairBasis(d, n_a). The constant -N (U + 4 J^2 / U) is not included.
SparseOperator build_effective_hamiltonian(const ModelParams& params);

/// Effective model written directly in (jbar, gammabar):
/// -jbar sum (eta+ eta + h.c.) - gammabar sum n n.
SparseOperator build_pair_hamiltonian(int sites, int pairs, double jbar, double gammabar);

enum class ChainKind { two_fermion, two_pair };

/// Relative-coordinate chain at total momentum index r with open ends.
/// two_fermion: s in [-S, S] stored at index s + S; two_pair: s in [1, S]
/// stored at index s - 1.
SparseOperator build_relative_chain(ChainKind kind, const ModelParams& params, int r,
                                    int cutoff);

/// y = H x through the stored entries.
StateVector matvec(const SparseOperator& op, const StateVector& x);

/// y = H x regenerating the entries from the bitmask rules.
StateVector matvec(const HamiltonianRules& rules, const StateVector& x);

/// <psi|H|psi>.
Complex expectation(const SparseOperator& op, const StateVector& psi);

}  // namespace cobos
