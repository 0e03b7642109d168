#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <vector>

#include "cobos/ansatz.hpp"
#include "cobos/fock.hpp"
#include "cobos/rational.hpp"
#include "cobos/solve.hpp"

namespace cobos {

// Schmidt spectrum and bipartite chi

struct SchmidtSpectrum {
  std::vector<double> lambdas;  // non-increasing, sum 1
  double purity = 0.0;
};

/// Squared singular values of the A-B amplitude matrix. A matrix whose
/// Frobenius norm differs from 1 is normalized with a warning on stderr.
SchmidtSpectrum schmidt_spectrum(const Eigen::MatrixXcd& amplitudes);

/// Amplitude matrix alpha_{kl} of a^dagger_k b^dagger_l |0> for a state on
/// FullBasis(d, 1, 1).
Eigen::MatrixXcd amplitude_matrix(const StateVector& two_fermion_state);

/// chi_N = N! e_N(lambda) of a bipartite coboson, through the elementary
/// symmetric polynomial recursion.
double chi_from_spectrum(std::span<const double> lambdas, int N);

// Block-coboson chi

/// chi_N^(M) = <0| q_(M)^N q_(M)^dagger^N |0> / N! in closed form on the ring:
/// prod_{i=1}^{N-1} (d - NM + i) / d^{N-1} for d > NM, times M when d == NM,
/// zero when NM > d.
Rational chi_closed(int d, int N, int M);

/// Same quantity from the explicit expansion of q_(M)^dagger^N |0> with
/// integer tuple counts.
Rational chi_oracle(int d, int N, int M);

/// Lower bound on chi_{N+1} / chi_N:
/// (1 - (N+1)(M-1)/d) (1 - M/(d+1-NM))^N.
double chi_ratio_lower_bound(int d, int N, int M);

struct LadderReport {
  std::vector<Rational> chis;            // chi_0 ... chi_{N_max+1}, chi_0 = 1
  std::vector<Rational> alphas_squared;  // alpha_N^2 = chi_N / chi_{N-1}, N = 1..N_max
  std::vector<Rational> eps_norms;       // <eps_N|eps_N>, N = 1..N_max

  Rational chi(int N) const { return chis.at(static_cast<std::size_t>(N)); }
  double alpha(int N) const;
  Rational eps_norm(int N) const { return eps_norms.at(static_cast<std::size_t>(N - 1)); }
};

/// Requires N_max * M <= d. For M = 1 every eps norm must vanish.
LadderReport ladder_report(int d, int N_max, int M);

// Square-norm test for multipartite entanglement

/// weight * a^dagger_{m1} a^dagger_{m2} ... with operators applied right to left
/// (the string reads left to right as written).
struct CreationTerm {
  Complex weight;
  std::vector<int> modes;
};
using CreationOperator = std::vector<CreationTerm>;

inline constexpr int kMaxSquareNormModes = 64;

/// Concatenated product c_1^dagger c_2^dagger ... of the factors.
CreationOperator product_operator(std::span<const CreationOperator> factors);

/// sum_k sqrt(f/m) (a^dagger_{o+kf} ... a^dagger_{o+kf+f-1}) over m modes from
/// `first_mode`: a maximally entangled block of f fermions with disjoint terms.
CreationOperator maximally_entangled_block(int first_mode, int modes, int fermions);

/// sum_k sqrt(lambda_k) a^dagger_k b^dagger_k with B modes offset by lambdas.size().
CreationOperator bipartite_operator(std::span<const double> lambdas);

struct SquareNormReport {
  double norm_squared = 0.0;
  /// Present when factors are declared: weight of overlapping term pairs.
  std::optional<double> omega_star;
  int factors = 0;
  /// 2^s (1 - omega_star) for s declared factors.
  std::optional<double> predicted_norm_squared;
};

/// || c^dagger^2 |0> ||^2 with explicit sign tracking.
SquareNormReport square_norm_test(const CreationOperator& op);

/// Same for c^dagger = product of the given factors, plus omega(*).
SquareNormReport square_norm_test(std::span<const CreationOperator> factors);

// Fidelities and correlations

/// |<target|psi>|^2 / (||target||^2 ||psi||^2).
double fidelity(const StateVector& psi, const StateVector& target);

/// Squared norm of the projection of the normalized target onto the ground space.
double fidelity(const GroundSpace& ground, const StateVector& target);

struct SinglePairPurity {
  Eigen::MatrixXcd rdm;  // rho_{ij} = <eta^dagger_i eta_j> / N
  double purity = 0.0;   // P1 = sum |rho_{ij}|^2
};

SinglePairPurity single_pair_purity(const StateVector& psi);

/// Closed form of P1 for the uniform state |1 + ... + 1>.
double uniform_state_purity(int d, int N);

/// Closed form of P1 for the block state |N> where it is known
/// (d > 2N and d == 2N); nullopt otherwise.
std::optional<double> block_state_purity(int d, int N);

/// <eta^dagger_i eta^dagger_j eta_i eta_j> / <n_i>^2, by direct operator
/// application. Warns when site occupations are not uniform.
double g2(const StateVector& psi, int i, int j);

// Energy ledger

struct LedgerRow {
  int M = 1;
  double energy = 0.0;
};

struct EnergyLedger {
  std::vector<LedgerRow> rows;  // M = 1 .. N for |M + 1 + ... + 1>
  /// Crossing of the M = 1 and M = N lines.
  Rational threshold_gammabar_over_jbar;
  Rational threshold_gamma_u_over_j2;
};

/// Average energy of a partition state under the non-adjacency assumption:
/// -2 (number of single pairs) jbar - (N - k) gammabar for k parts.
double ledger_energy(const Partition& partition, double jbar, double gammabar);

EnergyLedger energy_ledger(int N, double jbar, double gammabar);

struct LedgerDeviation {
  double exact = 0.0;
  double predicted = 0.0;
  double deviation = 0.0;  // |exact - predicted|
};

LedgerDeviation ledger_vs_exact_check(int d, const Partition& partition, double jbar,
                                      double gammabar);

}  // namespace cobos
