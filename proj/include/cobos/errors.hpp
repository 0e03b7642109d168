#pragma once

#include <stdexcept>
#include <string>

namespace cobos {

/// Argument outside the mathematical domain of an operation (basis mismatch,
/// particle count larger than the lattice, undefined effective model, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Requested Fock space does not fit the bitmask encoding or the size cap.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace cobos
