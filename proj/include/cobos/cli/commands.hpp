#pragma once

#include <functional>
#include <string>
#include <string_view>

#include "cobos/cli/config.hpp"
#include "cobos/cli/csv.hpp"
#include "cobos/fock.hpp"

namespace cobos::cli {

/// Fidelity target: "c:s:r" (c_sr to the power N), "q:s:r", "block:M" or a
/// partition such as "2+1".
struct Target {
  std::string label;
  std::function<StateVector(int d, int pairs)> build;
};

Target parse_target(std::string_view text);

/// Maps a target into the basis kind of the ground state (pair or full).
/// Full-basis targets lose their non-pair components on the pair basis.
StateVector adapt_target(const StateVector& target, const Basis& space);

CsvTable cmd_ground_state(const SweepConfig& config);
CsvTable cmd_fidelity_scan(const SweepConfig& config);
CsvTable cmd_chi(const SweepConfig& config);
CsvTable cmd_purity_scan(const SweepConfig& config);
CsvTable cmd_g2_scan(const SweepConfig& config);
CsvTable cmd_energy_ledger(const SweepConfig& config);

struct VerifyResult {
  CsvTable table;
  int failures = 0;
};

/// Analytic checkpoints; independent of the config except for solver tolerances.
VerifyResult cmd_verify(const SweepConfig& config);

}  // namespace cobos::cli
