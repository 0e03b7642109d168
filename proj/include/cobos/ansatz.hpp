#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cobos/fock.hpp"

namespace cobos {

/// Decreasing sequence of block sizes M1 >= ... >= Mk >= 1.
class Partition {
 public:
  /// Throws DomainError unless the parts are positive and non-increasing.
  explicit Partition(std::vector<int> parts);
  /// Parses "3+1" or "3,1".
  static Partition parse(std::string_view text);

  const std::vector<int>& parts() const noexcept { return parts_; }
  int total() const noexcept;
  int size() const noexcept { return static_cast<int>(parts_.size()); }
  /// Number of single-pair parts.
  int singles() const noexcept;
  /// Largest part.
  int largest() const noexcept { return parts_.front(); }
  std::string to_string() const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<int> parts_;
};

/// c^dagger_{s,r}^N |0> / sqrt(chi_N N!) on FullBasis(d, N, N) with
/// c^dagger_{s,r} = d^{-1/2} sum_k e^{i 2 pi k r / d} a^dagger_k b^dagger_{k+s}.
StateVector build_c_sr(int d, int s, int r, int power);

/// q^dagger_{s,r} |0> on PairBasis(d, 2) with
/// q^dagger_{s,r} = d^{-1/2} sum_k e^{i 2 pi k r / d} eta^dagger_k eta^dagger_{k+s}.
/// At s = d/2 every configuration is visited twice and the result is renormalized.
StateVector build_q_sr(int d, int s, int r);

/// Normalized uniform superposition of the d cyclic blocks of M adjacent pairs.
StateVector build_block(int d, int M);

struct PartitionState {
  StateVector state;
  /// Squared normalization constant: 1 / || q_(M1) ... q_(Mk) |0> ||^2.
  double norm_squared;
};

/// Normalized q^dagger_(M1) ... q^dagger_(Mk) |0> on PairBasis(d, N).
PartitionState build_partition_state(int d, const Partition& partition);

/// Doubly-occupied component of a full-basis state in the pair basis, with the
/// ansatz phase convention applied (first nonzero amplitude real positive).
StateVector to_pair_sector(const StateVector& full_state);

/// Rotates the global phase so the first nonzero amplitude is real positive.
StateVector with_phase_convention(const StateVector& state);

}  // namespace cobos
