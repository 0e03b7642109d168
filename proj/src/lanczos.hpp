#pragma once

#include <vector>

#include "cobos/solve.hpp"
#include "linalg.hpp"

namespace cobos::detail {

struct RitzPair {
  double value = 0.0;
  Vec vector;
  double residual = 0.0;
};

/// Lowest eigenpair of H restricted to the orthogonal complement of `locked`
/// (orthonormal eigenvectors of H). Full reorthogonalization, explicit restarts
/// from the current Ritz vector.
RitzPair lanczos_lowest(const SparseOperator& H, Vec start, const std::vector<Vec>& locked,
                        double tol, const SolverOptions& options);

}  // namespace cobos::detail
