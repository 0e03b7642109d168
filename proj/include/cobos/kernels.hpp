#pragma once

#include <span>

#include "cobos/model.hpp"
#include "cobos/sparse_operator.hpp"

// Row-parallel application kernels. Every kernel writes y[row] from a single
// thread and sums a row in a fixed order, so the parallel and serial variants
// produce bit-identical output. The serial variants are the reference.
namespace cobos::kernels {

void matvec_serial(const SparseOperator& op, std::span<const Complex> x, std::span<Complex> y);
void matvec_parallel(const SparseOperator& op, std::span<const Complex> x,
                     std::span<Complex> y);

void matrix_free_serial(const HamiltonianRules& rules, std::span<const Complex> x,
                        std::span<Complex> y);
void matrix_free_parallel(const HamiltonianRules& rules, std::span<const Complex> x,
                          std::span<Complex> y);

/// Threads the parallel kernels will use (1 without OpenMP).
int max_threads() noexcept;

}  // namespace cobos::kernels
