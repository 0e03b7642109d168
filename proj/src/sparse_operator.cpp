#include "cobos/sparse_operator.hpp"

#include <algorithm>
#include <cmath>

#include "cobos/errors.hpp"

namespace cobos {

SparseOperator::SparseOperator(BasisPtr basis, std::vector<Entry> entries)
    : basis_(std::move(basis)), entries_(std::move(entries)) {
  if (!basis_) throw DomainError("SparseOperator: null basis");
  dim_ = basis_->size();
  finalize();
}

SparseOperator::SparseOperator(std::size_t dim, std::vector<Entry> entries)
    : dim_(dim), entries_(std::move(entries)) {
  finalize();
}

const Basis& SparseOperator::basis() const {
  if (!basis_) throw DomainError("operator has no Fock basis attached");
  return *basis_;
}

void SparseOperator::finalize() {
  for (const auto& e : entries_)
    if (e.row >= dim_ || e.col >= dim_) throw DomainError("SparseOperator: index out of range");

  std::sort(entries_.begin(), entries_.end(), [](const Entry& a, const Entry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  std::vector<Entry> merged;
  merged.reserve(entries_.size());
  for (const auto& e : entries_) {
    if (!merged.empty() && merged.back().row == e.row && merged.back().col == e.col)
      merged.back().value += e.value;
    else
      merged.push_back(e);
  }
  std::erase_if(merged, [](const Entry& e) { return e.value == Complex{}; });
  entries_ = std::move(merged);

  row_offsets_.assign(dim_ + 1, 0);
  for (const auto& e : entries_) ++row_offsets_[e.row + 1];
  for (std::size_t r = 0; r < dim_; ++r) row_offsets_[r + 1] += row_offsets_[r];

  double scale = 0.0;
  norm_bound_ = 0.0;
  for (std::size_t r = 0; r < dim_; ++r) {
    double row_sum = 0.0;
    for (std::size_t k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k) {
      row_sum += std::abs(entries_[k].value);
      scale = std::max(scale, std::abs(entries_[k].value));
    }
    norm_bound_ = std::max(norm_bound_, row_sum);
  }

  const double tol = 1e-14 * std::max(1.0, scale);
  hermitian_ = true;
  for (const auto& e : entries_) {
    if (std::abs(e.value - std::conj(element(e.col, e.row))) > tol) {
      hermitian_ = false;
      break;
    }
  }
}

Complex SparseOperator::element(std::size_t row, std::size_t col) const {
  if (row >= dim_ || col >= dim_) throw DomainError("SparseOperator::element: out of range");
  const auto first = entries_.begin() + static_cast<std::ptrdiff_t>(row_offsets_[row]);
  const auto last = entries_.begin() + static_cast<std::ptrdiff_t>(row_offsets_[row + 1]);
  const auto it =
      std::lower_bound(first, last, col, [](const Entry& e, std::size_t c) { return e.col < c; });
  return (it != last && it->col == col) ? it->value : Complex{};
}

}  // namespace cobos
