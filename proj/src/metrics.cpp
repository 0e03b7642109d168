#include "cobos/metrics.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <iostream>
#include <map>
#include <stdexcept>

#include "cobos/errors.hpp"
#include "cobos/model.hpp"

namespace cobos {

namespace {

BigInt factorial(int n) {
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

BigInt power(int base, int exponent) {
  BigInt p = 1;
  for (int i = 0; i < exponent; ++i) p *= base;
  return p;
}

void require_chi_args(int d, int N, int M, const char* what) {
  if (d < 1 || N < 1 || M < 1) throw DomainError(std::string(what) + ": require d, N, M >= 1");
}

using ModeState = std::map<Mask, Complex>;

ModeState apply_creation(const CreationOperator& op, const ModeState& in) {
  ModeState out;
  for (const auto& [mask, amp] : in)
    for (const auto& term : op) {
      Mask m = mask;
      int sign = 1;
      bool alive = true;
      for (auto it = term.modes.rbegin(); it != term.modes.rend() && alive; ++it) {
        const auto r = create_mode(*it, m);
        alive = !r.annihilated();
        m = r.config;
        sign *= r.sign;
      }
      if (alive) out[m] += amp * term.weight * static_cast<double>(sign);
    }
  return out;
}

void validate_modes(const CreationOperator& op) {
  for (const auto& term : op)
    for (int m : term.modes)
      if (m < 0 || m >= kMaxSquareNormModes)
        throw CapacityError("square_norm_test: modes must lie in [0, 64)");
}

Mask term_support(const CreationTerm& t) {
  Mask m = 0;
  for (int mode : t.modes) m |= Mask{1} << mode;
  return m;
}

double expectation_real(const StateVector& psi, const SparseOperator& H) {
  return expectation(H, psi).real();
}

std::vector<double> occupations(const StateVector& psi) {
  const Basis& b = psi.basis();
  std::vector<double> n(static_cast<std::size_t>(b.sites()));
  for (std::size_t x = 0; x < b.size(); ++x) {
    const double w = std::norm(psi[x]);
    for (int k = 0; k < b.sites(); ++k)
      if (b.key(x) >> k & 1) n[static_cast<std::size_t>(k)] += w;
  }
  return n;
}

void require_normalized_pair_state(const StateVector& psi, const char* what) {
  if (psi.basis().kind() != BasisKind::pair)
    throw DomainError(std::string(what) + ": expects a pair-basis state");
  if (std::abs(psi.norm() - 1.0) > 1e-10)
    throw DomainError(std::string(what) + ": state must be normalized");
}

}  // namespace

SchmidtSpectrum schmidt_spectrum(const Eigen::MatrixXcd& amplitudes) {
  const double fro = amplitudes.norm();
  if (fro == 0.0) throw DomainError("schmidt_spectrum: zero amplitude matrix");
  Eigen::MatrixXcd m = amplitudes;
  if (std::abs(fro - 1.0) > 1e-12) {
    std::clog << "warning: schmidt_spectrum normalizing matrix with Frobenius norm " << fro
              << "\n";
    m /= fro;
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  SchmidtSpectrum out;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
    const double s = svd.singularValues()[i];
    out.lambdas.push_back(s * s);
  }
  std::sort(out.lambdas.begin(), out.lambdas.end(), std::greater<>());
  for (double l : out.lambdas) out.purity += l * l;
  return out;
}

Eigen::MatrixXcd amplitude_matrix(const StateVector& state) {
  const Basis& b = state.basis();
  if (b.kind() != BasisKind::full || b.n_a() != 1 || b.n_b() != 1)
    throw DomainError("amplitude_matrix: expects FullBasis(d, 1, 1)");
  const int d = b.sites();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  for (std::size_t i = 0; i < b.size(); ++i) {
    const FullConfig c = b.full_config(i);
    m(std::countr_zero(c.mask_a), std::countr_zero(c.mask_b)) = state[i];
  }
  return m;
}

double chi_from_spectrum(std::span<const double> lambdas, int N) {
  if (N < 0) throw DomainError("chi_from_spectrum: N must be >= 0");
  std::vector<double> e(static_cast<std::size_t>(N) + 1, 0.0);
  e[0] = 1.0;
  for (double l : lambdas)
    for (int n = N; n >= 1; --n) e[static_cast<std::size_t>(n)] += l * e[static_cast<std::size_t>(n - 1)];
  double f = 1.0;
  for (int i = 2; i <= N; ++i) f *= i;
  return f * e[static_cast<std::size_t>(N)];
}

Rational chi_closed(int d, int N, int M) {
  require_chi_args(d, N, M, "chi_closed");
  if (N * M > d) return Rational(0);
  BigInt num = 1;
  for (int i = 1; i <= N - 1; ++i) num *= d - N * M + i;
  if (N * M == d) num *= M;
  return Rational(num, power(d, N - 1));
}

Rational chi_oracle(int d, int N, int M) {
  require_chi_args(d, N, M, "chi_oracle");
  if (d > kMaxPairSites) throw CapacityError("chi_oracle: d exceeds pair-basis capacity");
  if (N * M > d) return Rational(0);
  // counts[x] = number of ordered block tuples producing configuration x
  std::map<Mask, BigInt> counts{{Mask{0}, BigInt(1)}};
  for (int step = 0; step < N; ++step) {
    std::map<Mask, BigInt> next;
    for (const auto& [mask, count] : counts)
      for (int k = 0; k < d; ++k) {
        PairConfig c{mask};
        bool alive = true;
        for (int i = 0; i < M && alive; ++i) {
          const auto r = apply_pair_op(PairOp::create, (k + i) % d, c);
          alive = !r.annihilated();
          c = r.config;
        }
        if (alive) next[c.mask] += count;
      }
    counts = std::move(next);
  }
  BigInt norm2 = 0;
  for (const auto& [mask, count] : counts) norm2 += count * count;
  return Rational(norm2, factorial(N) * power(d, N));
}

double chi_ratio_lower_bound(int d, int N, int M) {
  require_chi_args(d, N, M, "chi_ratio_lower_bound");
  const double first = 1.0 - static_cast<double>(N + 1) * (M - 1) / d;
  const double second = 1.0 - static_cast<double>(M) / (d + 1 - N * M);
  return first * std::pow(second, N);
}

double LadderReport::alpha(int N) const {
  return std::sqrt(to_double(alphas_squared.at(static_cast<std::size_t>(N - 1))));
}

LadderReport ladder_report(int d, int N_max, int M) {
  require_chi_args(d, N_max, M, "ladder_report");
  if (N_max * M > d) throw DomainError("ladder_report: require N_max * M <= d");
  LadderReport out;
  out.chis.push_back(Rational(1));
  for (int N = 1; N <= N_max + 1; ++N) out.chis.push_back(chi_closed(d, N, M));
  for (int N = 1; N <= N_max; ++N) {
    const Rational ratio = out.chi(N) / out.chi(N - 1);
    out.alphas_squared.push_back(ratio);
    out.eps_norms.push_back(1 - N * ratio + (N - 1) * out.chi(N + 1) / out.chi(N));
    if (M == 1 && out.eps_norms.back() != 0)
      throw std::logic_error("ladder_report: nonzero eps norm for M = 1");
  }
  return out;
}

CreationOperator product_operator(std::span<const CreationOperator> factors) {
  CreationOperator out{{Complex{1.0, 0.0}, {}}};
  for (const auto& f : factors) {
    CreationOperator next;
    for (const auto& left : out)
      for (const auto& right : f) {
        CreationTerm t{left.weight * right.weight, left.modes};
        t.modes.insert(t.modes.end(), right.modes.begin(), right.modes.end());
        next.push_back(std::move(t));
      }
    out = std::move(next);
  }
  return out;
}

CreationOperator maximally_entangled_block(int first_mode, int modes, int fermions) {
  if (fermions < 1 || modes < fermions || modes % fermions != 0)
    throw DomainError("maximally_entangled_block: modes must be a positive multiple of fermions");
  const int terms = modes / fermions;
  CreationOperator op;
  for (int k = 0; k < terms; ++k) {
    CreationTerm t{Complex{std::sqrt(1.0 / terms), 0.0}, {}};
    for (int i = 0; i < fermions; ++i) t.modes.push_back(first_mode + k * fermions + i);
    op.push_back(std::move(t));
  }
  return op;
}

CreationOperator bipartite_operator(std::span<const double> lambdas) {
  const int n = static_cast<int>(lambdas.size());
  CreationOperator op;
  for (int k = 0; k < n; ++k) {
    if (lambdas[static_cast<std::size_t>(k)] < 0.0)
      throw DomainError("bipartite_operator: Schmidt weights must be >= 0");
    op.push_back({Complex{std::sqrt(lambdas[static_cast<std::size_t>(k)]), 0.0}, {k, n + k}});
  }
  return op;
}

SquareNormReport square_norm_test(const CreationOperator& op) {
  validate_modes(op);
  const ModeState once = apply_creation(op, {{Mask{0}, Complex{1.0, 0.0}}});
  const ModeState twice = apply_creation(op, once);
  SquareNormReport out;
  for (const auto& [mask, amp] : twice) out.norm_squared += std::norm(amp);
  return out;
}

SquareNormReport square_norm_test(std::span<const CreationOperator> factors) {
  if (factors.empty()) throw DomainError("square_norm_test: no factors declared");
  SquareNormReport out = square_norm_test(product_operator(factors));
  double all = 1.0;
  double disjoint = 1.0;
  for (const auto& f : factors) {
    double w = 0.0;
    double d = 0.0;
    for (const auto& t : f) {
      w += std::norm(t.weight);
      for (const auto& u : f)
        if ((term_support(t) & term_support(u)) == 0) d += std::norm(t.weight) * std::norm(u.weight);
    }
    all *= w * w;
    disjoint *= d;
  }
  out.factors = static_cast<int>(factors.size());
  out.omega_star = all - disjoint;
  out.predicted_norm_squared = std::ldexp(1.0 - *out.omega_star, out.factors);
  return out;
}

double fidelity(const StateVector& psi, const StateVector& target) {
  const double norms = psi.norm() * target.norm();
  if (norms == 0.0) throw DomainError("fidelity: zero state");
  return std::norm(inner_product(target, psi)) / (norms * norms);
}

double fidelity(const GroundSpace& ground, const StateVector& target) {
  if (!ground.basis) throw DomainError("fidelity: ground space has no Fock basis");
  require_same_space(*ground.basis, target.basis(), "fidelity");
  const double tn = target.norm();
  if (tn == 0.0) throw DomainError("fidelity: zero target");
  double total = 0.0;
  for (std::size_t i = 0; i < ground.vectors.size(); ++i)
    total += std::norm(inner_product(ground.state(i), target));
  return total / (tn * tn);
}

SinglePairPurity single_pair_purity(const StateVector& psi) {
  require_normalized_pair_state(psi, "single_pair_purity");
  const Basis& b = psi.basis();
  const int d = b.sites();
  const int N = b.pairs();
  if (N < 1) throw DomainError("single_pair_purity: requires N >= 1");
  SinglePairPurity out;
  out.rdm = Eigen::MatrixXcd::Zero(d, d);
  for (std::size_t x = 0; x < b.size(); ++x) {
    const Mask m = b.key(x);
    for (int j = 0; j < d; ++j) {
      if (!(m >> j & 1)) continue;
      out.rdm(j, j) += std::norm(psi[x]);
      for (int i = 0; i < d; ++i) {
        if (m >> i & 1) continue;
        const Mask y = (m & ~(Mask{1} << j)) | (Mask{1} << i);
        out.rdm(i, j) += std::conj(psi[*b.index_of(y)]) * psi[x];
      }
    }
  }
  out.rdm /= static_cast<double>(N);
  out.purity = out.rdm.cwiseAbs2().sum();
  return out;
}

double uniform_state_purity(int d, int N) {
  return 1.0 / d + static_cast<double>(d - N) * (d - N) / (static_cast<double>(d) * (d - 1));
}

std::optional<double> block_state_purity(int d, int N) {
  if (d > 2 * N) return (1.0 + 2.0 / (N * N)) / d;
  if (d == 2 * N) return (1.0 + 4.0 / (N * N)) / d;
  return std::nullopt;
}

double g2(const StateVector& psi, int i, int j) {
  require_normalized_pair_state(psi, "g2");
  const Basis& b = psi.basis();
  if (i < 0 || j < 0 || i >= b.sites() || j >= b.sites()) throw DomainError("g2: site out of range");
  const auto n = occupations(psi);
  const auto [lo, hi] = std::minmax_element(n.begin(), n.end());
  if (*hi - *lo > 1e-8) std::clog << "warning: g2 on a state with non-uniform occupations\n";
  const double ni = n[static_cast<std::size_t>(i)];
  if (ni <= 0.0) throw DomainError("g2: zero mean occupation");

  Complex numerator{};
  for (std::size_t x = 0; x < b.size(); ++x) {
    PairConfig c{b.key(x)};
    bool alive = true;
    for (auto [op, site] : {std::pair{PairOp::annihilate, j}, std::pair{PairOp::annihilate, i},
                            std::pair{PairOp::create, j}, std::pair{PairOp::create, i}}) {
      const auto r = apply_pair_op(op, site, c);
      if (r.annihilated()) {
        alive = false;
        break;
      }
      c = r.config;
    }
    if (alive) numerator += std::conj(psi[*b.index_of(c.mask)]) * psi[x];
  }
  return numerator.real() / (ni * ni);
}

double ledger_energy(const Partition& partition, double jbar, double gammabar) {
  const int N = partition.total();
  const int k = partition.size();
  return -2.0 * partition.singles() * jbar - static_cast<double>(N - k) * gammabar;
}

EnergyLedger energy_ledger(int N, double jbar, double gammabar) {
  if (N < 2) throw DomainError("energy_ledger: requires N >= 2");
  EnergyLedger out;
  for (int M = 1; M <= N; ++M) {
    std::vector<int> parts{M};
    parts.insert(parts.end(), static_cast<std::size_t>(N - M), 1);
    out.rows.push_back({M, ledger_energy(Partition(std::move(parts)), jbar, gammabar)});
  }
  out.threshold_gammabar_over_jbar = Rational(2 * N, N - 1);
  out.threshold_gamma_u_over_j2 = 2 + out.threshold_gammabar_over_jbar;
  return out;
}

LedgerDeviation ledger_vs_exact_check(int d, const Partition& partition, double jbar,
                                      double gammabar) {
  const auto ps = build_partition_state(d, partition);
  const SparseOperator H = build_pair_hamiltonian(d, partition.total(), jbar, gammabar);
  LedgerDeviation out;
  out.exact = expectation_real(ps.state, H);
  out.predicted = ledger_energy(partition, jbar, gammabar);
  out.deviation = std::abs(out.exact - out.predicted);
  return out;
}

}  // namespace cobos
