#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cobos/model.hpp"
#include "cobos/solve.hpp"

namespace cobos::cli {

enum class ModelKind { full, effective };

ModelKind parse_model(std::string_view text);

/// Linear grid in the dimensionless variable gamma U / J^2.
struct GammaGrid {
  double min = 0.0;
  double max = 10.0;
  int points = 11;

  /// "min:max:points"
  static GammaGrid parse(std::string_view text);
  std::vector<double> values() const;
};

/// Inclusive integer range "first:last" (a single integer is a one-element range).
struct IntRange {
  int first = 1;
  int last = 1;

  static IntRange parse(std::string_view text);
};

struct SweepConfig {
  ModelKind model = ModelKind::effective;
  int d = 6;
  int n_a = 2;
  int n_b = 2;
  double J = 1.0;
  double U = 1000.0;
  /// Single point for ground-state, in gamma U / J^2.
  double gamma_reduced = 0.0;
  /// Absolute gamma; overrides gamma_reduced when set (needed at J = 0).
  std::optional<double> gamma_absolute;
  GammaGrid grid;
  std::vector<std::string> targets;
  int jobs = 1;
  double tol = 1e-10;
  double tol_deg = 1e-9;
  IntRange d_range{4, 12};
  IntRange n_range{1, 4};
  IntRange m_range{1, 3};
  /// chi_oracle is evaluated only for d up to this value.
  int oracle_max_d = 16;

  /// Throws DomainError on invalid fields. Lattice fields (d, particle
  /// numbers) are skipped when `lattice` is false.
  void validate(bool lattice = true) const;
  /// Pair count of the effective model; requires n_a == n_b.
  int pairs() const;
  ModelParams params_at(double gamma_u_over_j2) const;
  ModelParams params_single() const;
  SolverOptions solver_options() const;
};

}  // namespace cobos::cli
