#include "cobos/kernels.hpp"

#include <cstdint>

#include "cobos/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cobos::kernels {

namespace {

void check_sizes(std::size_t dim, std::size_t nx, std::size_t ny) {
  if (nx != dim || ny != dim) throw DomainError("matvec: vector length does not match operator");
}

inline Complex row_product(const SparseOperator& op, std::size_t r, std::span<const Complex> x) {
  const auto entries = op.entries();
  const auto offsets = op.row_offsets();
  Complex s{};
  for (std::size_t k = offsets[r]; k < offsets[r + 1]; ++k) s += entries[k].value * x[entries[k].col];
  return s;
}

// H is Hermitian, so row r of H is the conjugate of what the rules emit for column r.
template <typename Rules>
inline Complex rules_row(const Rules& rules, std::size_t r, std::span<const Complex> x) {
  Complex s{};
  rules.act(r, [&](std::size_t c, Complex v) { s += std::conj(v) * x[c]; });
  return s;
}

std::size_t rules_dim(const HamiltonianRules& rules) {
  return std::visit([](const auto& r) { return r.basis()->size(); }, rules);
}

}  // namespace

void matvec_serial(const SparseOperator& op, std::span<const Complex> x, std::span<Complex> y) {
  check_sizes(op.dim(), x.size(), y.size());
  for (std::size_t r = 0; r < op.dim(); ++r) y[r] = row_product(op, r, x);
}

void matvec_parallel(const SparseOperator& op, std::span<const Complex> x,
                     std::span<Complex> y) {
  check_sizes(op.dim(), x.size(), y.size());
  const auto n = static_cast<std::int64_t>(op.dim());
#pragma omp parallel for schedule(static)
  for (std::int64_t r = 0; r < n; ++r)
    y[static_cast<std::size_t>(r)] = row_product(op, static_cast<std::size_t>(r), x);
}

void matrix_free_serial(const HamiltonianRules& rules, std::span<const Complex> x,
                        std::span<Complex> y) {
  const std::size_t dim = rules_dim(rules);
  check_sizes(dim, x.size(), y.size());
  std::visit(
      [&](const auto& r) {
        for (std::size_t row = 0; row < dim; ++row) y[row] = rules_row(r, row, x);
      },
      rules);
}

void matrix_free_parallel(const HamiltonianRules& rules, std::span<const Complex> x,
                          std::span<Complex> y) {
  const std::size_t dim = rules_dim(rules);
  check_sizes(dim, x.size(), y.size());
  std::visit(
      [&](const auto& r) {
        const auto n = static_cast<std::int64_t>(dim);
#pragma omp parallel for schedule(dynamic, 256)
        for (std::int64_t row = 0; row < n; ++row)
          y[static_cast<std::size_t>(row)] = rules_row(r, static_cast<std::size_t>(row), x);
      },
      rules);
}

int max_threads() noexcept {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace cobos::kernels
