#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "cobos/fock.hpp"
#include "cobos/model.hpp"
#include "cobos/sparse_operator.hpp"

namespace cobos {

enum class SolverMethod { automatic, dense, iterative };

struct SolverOptions {
  /// Levels within tol_deg * max(1, |E0|) of the minimum form the ground space.
  double tol_deg = 1e-9;
  /// Residual bound ||Hv - Ev|| <= tol_res * max(1, ||H||).
  double tol_res = 1e-10;
  SolverMethod method = SolverMethod::automatic;
  /// Dimensions below this use the dense solver under SolverMethod::automatic.
  std::size_t dense_limit = 2000;
  int max_restarts = 50;
  std::size_t krylov_size = 300;
};

/// Lowest eigenvalue with an orthonormal basis of its full eigenspace.
struct GroundSpace {
  double energy = 0.0;
  int degeneracy = 0;
  std::vector<std::vector<Complex>> vectors;
  double max_residual = 0.0;
  BasisPtr basis;  // null for chain operators

  StateVector state(std::size_t i) const;
};

GroundSpace ground_space(const SparseOperator& H, const SolverOptions& options = {});

/// The k lowest eigenvalues in ascending order, multiplicities included.
std::vector<double> lowest_levels(const SparseOperator& H, std::size_t k,
                                  const SolverOptions& options = {});

/// Closed-form bound state of a relative-coordinate chain. Amplitudes follow
/// amplitude(s) = r0^{|s|} (two fermions, s in Z) or r0^s (two pairs, s >= 1),
/// up to normalization.
struct BoundStateSolution {
  double r0 = 0.0;
  double energy = 0.0;
  bool bound = false;
  /// J == 0 for two fermions: degenerate limit with r0 = 0, energy = -U.
  bool limit_case = false;

  double amplitude(int s) const;
};

BoundStateSolution analytic_two_fermion(double J, double U);

/// gamma > 2 jbar: bound with r0 = jbar / (gamma - jbar). Otherwise unbound and
/// energy is the continuum edge -4 jbar.
BoundStateSolution analytic_two_pair(double jbar, double gamma);

/// Geometric-tail diagnostics of a finite-chain ground state. `profile` holds
/// amplitude magnitudes ordered by distance from the binding site.
struct TailFit {
  double tail_weight = 0.0;  // norm^2 fraction on the last quarter of the chain
  double r0_fit = 0.0;       // fitted contraction ratio over the decaying region
  bool bound = false;
};

TailFit fit_geometric_tail(std::span<const double> profile);

/// Ground state of a relative chain and the tail fit of its outward profile.
struct ChainGroundState {
  double energy = 0.0;
  std::vector<double> profile;  // |amplitude| from the binding site outward
  TailFit tail;
};

ChainGroundState solve_relative_chain(ChainKind kind, const ModelParams& params, int cutoff,
                                      const SolverOptions& options = {});

struct SpectralEquivalenceReport {
  std::vector<double> effective_levels;  // H_eff levels with -N(U + 4J^2/U) restored
  std::vector<double> full_levels;
  double max_level_deviation = 0.0;
  /// Same comparison for the gaps E_k - E_0, insensitive to a common shift.
  double max_gap_deviation = 0.0;
  /// Pair-sector ground-state fidelity; empty when either ground space is degenerate.
  std::optional<double> fidelity;
  double pair_sector_weight = 0.0;
  int full_degeneracy = 0;
  int effective_degeneracy = 0;
  bool degenerate() const noexcept { return !fidelity.has_value(); }
};

/// Compares the full extended Hubbard model (N_A = N_B = n_a) against the
/// effective pair model. Requires U / J >= 100.
SpectralEquivalenceReport spectral_equivalence_check(const ModelParams& params,
                                                     std::size_t k_levels,
                                                     const SolverOptions& options = {});

}  // namespace cobos
