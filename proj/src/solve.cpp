#include "cobos/solve.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "cobos/errors.hpp"
#include "cobos/kernels.hpp"
#include "lanczos.hpp"
#include "linalg.hpp"

namespace cobos {

namespace {

using detail::Vec;

struct Eigenpairs {
  std::vector<double> values;
  std::vector<Vec> vectors;
};

bool all_real(const SparseOperator& H) {
  return std::all_of(H.entries().begin(), H.entries().end(),
                     [](const Entry& e) { return e.value.imag() == 0.0; });
}

template <typename Matrix>
Eigenpairs dense_eigen(const SparseOperator& H, std::size_t keep) {
  const auto n = static_cast<Eigen::Index>(H.dim());
  Matrix m = Matrix::Zero(n, n);
  for (const auto& e : H.entries()) {
    if constexpr (std::is_same_v<typename Matrix::Scalar, double>)
      m(static_cast<Eigen::Index>(e.row), static_cast<Eigen::Index>(e.col)) = e.value.real();
    else
      m(static_cast<Eigen::Index>(e.row), static_cast<Eigen::Index>(e.col)) = e.value;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  if (es.info() != Eigen::Success) throw ConvergenceError("dense eigensolver failed", INFINITY);
  Eigenpairs out;
  keep = std::min<std::size_t>(keep, H.dim());
  for (std::size_t k = 0; k < keep; ++k) {
    out.values.push_back(es.eigenvalues()[static_cast<Eigen::Index>(k)]);
    Vec v(H.dim());
    for (Eigen::Index i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = es.eigenvectors()(i, static_cast<Eigen::Index>(k));
    out.vectors.push_back(std::move(v));
  }
  return out;
}

Eigenpairs dense_lowest(const SparseOperator& H, std::size_t keep) {
  return all_real(H) ? dense_eigen<Eigen::MatrixXd>(H, keep)
                     : dense_eigen<Eigen::MatrixXcd>(H, keep);
}

Vec deterministic_start(std::size_t n, int round) {
  Vec v(n);
  if (round == 0) {
    std::fill(v.begin(), v.end(), Complex{1.0 / std::sqrt(static_cast<double>(n)), 0.0});
    return v;
  }
  std::mt19937_64 rng(0x5eed0000ULL + static_cast<unsigned>(round));
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (auto& x : v) x = {dist(rng), dist(rng)};
  return v;
}

double level_tolerance(double tol_deg, double e0) { return tol_deg * std::max(1.0, std::abs(e0)); }

bool use_dense(const SparseOperator& H, const SolverOptions& o) {
  return o.method == SolverMethod::dense ||
         (o.method == SolverMethod::automatic && H.dim() < o.dense_limit);
}

double residual(const SparseOperator& H, const Vec& v, double value) {
  Vec w(H.dim());
  kernels::matvec_serial(H, v, w);
  detail::axpy(-value, v, w);
  return detail::norm2(w);
}

// Deflated Lanczos: each round converges the lowest level of H on the
// complement of the vectors found so far; stop once a round lands above the
// current minimum by more than the degeneracy window. `min_levels` forces at
// least that many rounds.
Eigenpairs iterative_lowest(const SparseOperator& H, const SolverOptions& o,
                            std::size_t min_levels) {
  const double tol = o.tol_res * std::max(1.0, H.norm_bound());
  Eigenpairs found;
  double e_min = INFINITY;
  for (int round = 0; static_cast<std::size_t>(round) < H.dim(); ++round) {
    auto pair = detail::lanczos_lowest(H, deterministic_start(H.dim(), round), found.vectors, tol, o);
    found.values.push_back(pair.value);
    found.vectors.push_back(std::move(pair.vector));
    e_min = std::min(e_min, pair.value);
    if (found.values.size() >= min_levels && found.values.size() > 1 &&
        pair.value > e_min + level_tolerance(o.tol_deg, e_min))
      break;
  }
  std::vector<std::size_t> order(found.values.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return found.values[a] < found.values[b]; });
  Eigenpairs sorted;
  for (auto i : order) {
    sorted.values.push_back(found.values[i]);
    sorted.vectors.push_back(std::move(found.vectors[i]));
  }
  return sorted;
}

}  // namespace

StateVector GroundSpace::state(std::size_t i) const {
  if (!basis) throw DomainError("ground space has no Fock basis");
  return StateVector(basis, vectors.at(i));
}

GroundSpace ground_space(const SparseOperator& H, const SolverOptions& options) {
  if (H.dim() == 0) throw DomainError("ground_space: empty operator");
  if (!H.hermitian()) throw DomainError("ground_space: operator is not Hermitian");

  Eigenpairs pairs = use_dense(H, options) ? dense_lowest(H, H.dim()) : iterative_lowest(H, options, 1);

  GroundSpace gs;
  gs.energy = pairs.values.front();
  gs.basis = H.basis_ptr();
  const double window = level_tolerance(options.tol_deg, gs.energy);
  const double tol = options.tol_res * std::max(1.0, H.norm_bound());
  for (std::size_t k = 0; k < pairs.values.size() && pairs.values[k] <= gs.energy + window; ++k) {
    Vec v = std::move(pairs.vectors[k]);
    detail::fix_phase(v);
    const double r = residual(H, v, pairs.values[k]);
    gs.max_residual = std::max(gs.max_residual, r);
    gs.vectors.push_back(std::move(v));
  }
  gs.degeneracy = static_cast<int>(gs.vectors.size());
  if (gs.max_residual > tol)
    throw ConvergenceError("ground_space: residual " + std::to_string(gs.max_residual) +
                               " exceeds tolerance " + std::to_string(tol),
                           gs.max_residual);
  return gs;
}

std::vector<double> lowest_levels(const SparseOperator& H, std::size_t k,
                                  const SolverOptions& options) {
  if (!H.hermitian()) throw DomainError("lowest_levels: operator is not Hermitian");
  k = std::min(k, H.dim());
  Eigenpairs pairs = use_dense(H, options) ? dense_lowest(H, k) : iterative_lowest(H, options, k);
  pairs.values.resize(k);
  return pairs.values;
}

double BoundStateSolution::amplitude(int s) const {
  return std::pow(r0, std::abs(s));
}

BoundStateSolution analytic_two_fermion(double J, double U) {
  if (!(J >= 0.0) || !(U >= 0.0)) throw DomainError("analytic_two_fermion: J, U must be >= 0");
  BoundStateSolution out;
  if (J == 0.0) {
    out.r0 = 0.0;
    out.energy = -U;
    out.bound = U > 0.0;
    out.limit_case = true;
    return out;
  }
  const double root = std::sqrt(U * U + 16.0 * J * J);
  out.r0 = (root - U) / (4.0 * J);
  out.energy = -root;
  out.bound = U > 0.0;
  return out;
}

BoundStateSolution analytic_two_pair(double jbar, double gamma) {
  if (!(jbar > 0.0) || !(gamma >= 0.0))
    throw DomainError("analytic_two_pair: requires jbar > 0 and gamma >= 0");
  BoundStateSolution out;
  if (gamma > 2.0 * jbar) {
    out.bound = true;
    out.r0 = jbar / (gamma - jbar);
    out.energy = (4.0 * gamma * jbar - 4.0 * jbar * jbar - 2.0 * gamma * gamma) / (gamma - jbar);
  } else {
    out.bound = false;
    out.r0 = 1.0;
    out.energy = -4.0 * jbar;
  }
  return out;
}

TailFit fit_geometric_tail(std::span<const double> profile) {
  TailFit fit;
  const std::size_t n = profile.size();
  if (n < 4) throw DomainError("fit_geometric_tail: profile too short");
  double total = 0.0;
  double tail = 0.0;
  double biggest = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = profile[i] * profile[i];
    total += w;
    if (i >= n - n / 4) tail += w;
    biggest = std::max(biggest, profile[i]);
  }
  if (total == 0.0) throw DomainError("fit_geometric_tail: zero profile");
  fit.tail_weight = tail / total;
  fit.bound = fit.tail_weight < 1e-8;

  // Least-squares slope of log|amplitude| over the decaying region that stays
  // above the round-off floor.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  for (std::size_t i = 1; i < n / 2; ++i) {
    if (profile[i] <= 1e-9 * biggest) break;
    const double x = static_cast<double>(i);
    const double y = std::log(profile[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  if (count >= 2) {
    const double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
    fit.r0_fit = std::exp(slope);
  }
  return fit;
}

namespace {

// Eigenvector of a tridiagonal chain for a known eigenvalue, by recurrence from
// the open end at `last` down to `first`. Inward the decaying solution is the
// dominant one, so the components keep full relative accuracy deep into the
// tail where a dense eigenvector is only accurate in absolute terms.
std::vector<double> backward_profile(const SparseOperator& H, double energy, std::size_t first,
                                     std::size_t last) {
  std::vector<Complex> a(last - first + 1);
  a.back() = 1.0;
  Complex next{};  // amplitude beyond `last`, zero at the open end
  for (std::size_t i = last; i > first; --i) {
    const std::size_t k = i - first;
    const Complex below = H.element(i, i - 1);
    if (below == Complex{}) return {};
    const Complex above = i + 1 < H.dim() ? H.element(i, i + 1) : Complex{};
    a[k - 1] = ((energy - H.element(i, i)) * a[k] - above * next) / below;
    next = a[k];
    if (std::abs(a[k - 1]) > 1e100) {
      for (std::size_t j = k - 1; j < a.size(); ++j) a[j] *= 1e-100;
      next *= 1e-100;
    }
  }
  std::vector<double> profile(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) profile[j] = std::abs(a[j]);
  return profile;
}

}  // namespace

ChainGroundState solve_relative_chain(ChainKind kind, const ModelParams& params, int cutoff,
                                      const SolverOptions& options) {
  const SparseOperator H = build_relative_chain(kind, params, 0, cutoff);
  const GroundSpace gs = ground_space(H, options);
  ChainGroundState out;
  out.energy = gs.energy;
  const std::size_t first = kind == ChainKind::two_fermion ? static_cast<std::size_t>(cutoff) : 0;
  out.profile = backward_profile(H, gs.energy, first, H.dim() - 1);
  if (out.profile.empty()) {
    const auto& v = gs.vectors.front();
    for (std::size_t i = first; i < H.dim(); ++i) out.profile.push_back(std::abs(v[i]));
  }
  // unit norm of the full chain vector; the two-fermion chain is mirror symmetric
  double norm2 = 0.0;
  for (std::size_t j = 0; j < out.profile.size(); ++j)
    norm2 += (kind == ChainKind::two_fermion && j > 0 ? 2.0 : 1.0) * out.profile[j] * out.profile[j];
  for (auto& x : out.profile) x /= std::sqrt(norm2);
  out.tail = fit_geometric_tail(out.profile);
  return out;
}

SpectralEquivalenceReport spectral_equivalence_check(const ModelParams& params,
                                                     std::size_t k_levels,
                                                     const SolverOptions& options) {
  validate(params);
  if (params.U <= 0.0) throw DomainError("spectral_equivalence_check: requires U > 0");
  if (params.J > 0.0 && params.U / params.J < 100.0)
    throw DomainError("spectral_equivalence_check: requires U / J >= 100");
  if (params.n_a != params.n_b)
    throw DomainError("spectral_equivalence_check: requires N_A == N_B");

  const SparseOperator full = build_full_hamiltonian(params);
  const SparseOperator eff = build_effective_hamiltonian(params);

  SpectralEquivalenceReport report;
  report.full_levels = lowest_levels(full, k_levels, options);
  report.effective_levels = lowest_levels(eff, k_levels, options);
  const double shift = params.effective_constant();
  for (auto& e : report.effective_levels) e += shift;
  const auto& fl = report.full_levels;
  const auto& el = report.effective_levels;
  for (std::size_t i = 0; i < std::min(fl.size(), el.size()); ++i) {
    report.max_level_deviation = std::max(report.max_level_deviation, std::abs(fl[i] - el[i]));
    report.max_gap_deviation =
        std::max(report.max_gap_deviation, std::abs((fl[i] - fl[0]) - (el[i] - el[0])));
  }

  const GroundSpace gf = ground_space(full, options);
  const GroundSpace ge = ground_space(eff, options);
  report.full_degeneracy = gf.degeneracy;
  report.effective_degeneracy = ge.degeneracy;
  const StateVector projected = full_to_pair(gf.state(0));
  report.pair_sector_weight = projected.norm() * projected.norm();
  if (gf.degeneracy == 1 && ge.degeneracy == 1 && report.pair_sector_weight > 0.0) {
    const double overlap = std::norm(inner_product(ge.state(0), projected));
    report.fidelity = overlap / report.pair_sector_weight;
  }
  return report;
}

}  // namespace cobos
