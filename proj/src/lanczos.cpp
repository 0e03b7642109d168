#include "lanczos.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <string>

#include "cobos/errors.hpp"
#include "cobos/kernels.hpp"

namespace cobos::detail {

namespace {

struct Tridiagonal {
  std::vector<double> alpha;
  std::vector<double> beta;  // beta[j] couples q_j and q_{j+1}
};

std::pair<double, Eigen::VectorXd> lowest_ritz(const Tridiagonal& t, std::size_t m) {
  Eigen::VectorXd diag(static_cast<Eigen::Index>(m));
  Eigen::VectorXd sub(static_cast<Eigen::Index>(m > 0 ? m - 1 : 0));
  for (std::size_t i = 0; i < m; ++i) diag[static_cast<Eigen::Index>(i)] = t.alpha[i];
  for (std::size_t i = 0; i + 1 < m; ++i) sub[static_cast<Eigen::Index>(i)] = t.beta[i];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  return {es.eigenvalues()[0], es.eigenvectors().col(0)};
}

}  // namespace

RitzPair lanczos_lowest(const SparseOperator& H, Vec start, const std::vector<Vec>& locked,
                        double tol, const SolverOptions& options) {
  const std::size_t n = H.dim();
  const double scale = std::max(1.0, H.norm_bound());
  const std::size_t available = n - std::min(n, locked.size());
  if (available == 0) throw DomainError("lanczos: no directions left outside the locked space");
  const std::size_t m_max = std::max<std::size_t>(1, std::min(options.krylov_size, available));

  double last_residual = INFINITY;
  for (int restart = 0; restart <= options.max_restarts; ++restart) {
    orthogonalize(start, locked);
    double nrm = norm2(start);
    if (nrm < 1e-10) throw DomainError("lanczos: start vector lies in the locked space");
    scale_vec(1.0 / nrm, start);

    std::vector<Vec> Q;
    Q.push_back(start);
    Tridiagonal t;
    Vec w(n);
    bool exhausted = false;
    std::size_t m = 0;
    for (std::size_t j = 0; j < m_max; ++j) {
      kernels::matvec_parallel(H, Q[j], w);
      const double a = dot(Q[j], w).real();
      t.alpha.push_back(a);
      axpy(-a, Q[j], w);
      if (j > 0) axpy(-t.beta[j - 1], Q[j - 1], w);
      orthogonalize(w, locked);
      orthogonalize(w, Q);
      const double b = norm2(w);
      t.beta.push_back(b);
      m = j + 1;

      const bool check = (m % 5 == 0) || m == m_max || b < 1e-13 * scale;
      if (check) {
        auto [theta, y] = lowest_ritz(t, m);
        const double estimate = b * std::abs(y[static_cast<Eigen::Index>(m - 1)]);
        if (estimate <= 0.1 * tol || b < 1e-13 * scale) {
          exhausted = b < 1e-13 * scale;
          break;
        }
      }
      if (j + 1 < m_max) {
        Vec next(w);
        scale_vec(1.0 / b, next);
        Q.push_back(std::move(next));
      }
    }

    auto [theta, y] = lowest_ritz(t, m);
    Vec ritz(n);
    for (std::size_t i = 0; i < m; ++i) axpy(y[static_cast<Eigen::Index>(i)], Q[i], ritz);
    orthogonalize(ritz, locked);
    scale_vec(1.0 / norm2(ritz), ritz);
    kernels::matvec_parallel(H, ritz, w);
    const double rayleigh = dot(ritz, w).real();
    axpy(-rayleigh, ritz, w);
    last_residual = norm2(w);
    if (last_residual <= tol || exhausted) return {rayleigh, std::move(ritz), last_residual};
    start = std::move(ritz);
  }
  throw ConvergenceError("lanczos: no convergence, residual " + std::to_string(last_residual),
                         last_residual);
}

}  // namespace cobos::detail
