#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cobos/fock.hpp"

namespace cobos {

struct Entry {
  std::size_t row = 0;
  std::size_t col = 0;
  Complex value{};
};

/// Operator stored as (row, col)-sorted triplets with duplicates merged and
/// exact zeros dropped. The sorted triplets double as a CSR layout through
/// row_offsets(). The basis is optional: relative-coordinate chains carry
/// only a dimension.
class SparseOperator {
 public:
  SparseOperator(BasisPtr basis, std::vector<Entry> entries);
  SparseOperator(std::size_t dim, std::vector<Entry> entries);

  std::size_t dim() const noexcept { return dim_; }
  bool has_basis() const noexcept { return basis_ != nullptr; }
  const Basis& basis() const;
  const BasisPtr& basis_ptr() const noexcept { return basis_; }

  std::span<const Entry> entries() const noexcept { return entries_; }
  std::span<const std::size_t> row_offsets() const noexcept { return row_offsets_; }
  std::size_t nnz() const noexcept { return entries_.size(); }

  /// value(r, c) == conj(value(c, r)) within 1e-14 of the operator scale.
  bool hermitian() const noexcept { return hermitian_; }
  Complex element(std::size_t row, std::size_t col) const;
  /// Largest absolute row sum; bounds the spectral radius.
  double norm_bound() const noexcept { return norm_bound_; }

 private:
  void finalize();

  BasisPtr basis_;
  std::size_t dim_ = 0;
  std::vector<Entry> entries_;
  std::vector<std::size_t> row_offsets_;
  bool hermitian_ = false;
  double norm_bound_ = 0.0;
};

}  // namespace cobos
