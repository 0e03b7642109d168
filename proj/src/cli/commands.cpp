#include "cobos/cli/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <exception>

#include "cobos/ansatz.hpp"
#include "cobos/errors.hpp"
#include "cobos/metrics.hpp"
#include "cobos/model.hpp"
#include "cobos/solve.hpp"

namespace cobos::cli {

namespace {

std::vector<int> parse_ints(std::string_view text, std::string_view context, std::size_t count) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find(':', pos), text.size());
    const std::string_view token = text.substr(pos, end - pos);
    int v = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size())
      throw DomainError("cannot parse target '" + std::string(context) + "'");
    out.push_back(v);
    pos = end + 1;
  }
  if (out.size() != count) throw DomainError("wrong number of fields in target '" + std::string(context) + "'");
  return out;
}

SparseOperator hamiltonian(const SweepConfig& c, const ModelParams& p) {
  if (c.model == ModelKind::full) return build_full_hamiltonian(p);
  c.pairs();
  return build_effective_hamiltonian(p);
}

GroundSpace solve_point(const SweepConfig& c, const ModelParams& p) {
  return ground_space(hamiltonian(c, p), c.solver_options());
}

/// Normalized pair-sector image of ground vector 0.
StateVector pair_ground_state(const GroundSpace& gs) {
  const StateVector v = gs.state(0);
  if (v.basis().kind() == BasisKind::pair) return v.normalized();
  const StateVector p = to_pair_sector(v);
  if (p.norm() < 1e-14) throw DomainError("ground state has no pair-sector component");
  return p.normalized();
}

std::string model_name(ModelKind m) { return m == ModelKind::full ? "full" : "effective"; }

void describe(CsvTable& t, const SweepConfig& c) {
  t.comment("model=" + model_name(c.model));
  t.comment("d=" + std::to_string(c.d) + " N_A=" + std::to_string(c.n_a) + " N_B=" + std::to_string(c.n_b));
  t.comment("J=" + format_number(c.J) + " U=" + format_number(c.U));
}

struct PointOutput {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> comments;
};

/// Evaluates grid points concurrently and returns results in grid order.
template <class F>
std::vector<PointOutput> evaluate_grid(const std::vector<double>& grid, int jobs, F&& f) {
  std::vector<PointOutput> out(grid.size());
  std::vector<std::exception_ptr> errors(grid.size());
  const long n = static_cast<long>(grid.size());
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
  for (long i = 0; i < n; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = f(grid[static_cast<std::size_t>(i)]);
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

void collect(CsvTable& t, const std::vector<PointOutput>& points) {
  for (const auto& p : points)
    for (const auto& c : p.comments) t.comment(c);
  for (const auto& p : points)
    for (const auto& r : p.rows) t.add_row(r);
}

std::string degeneracy_note(double g, int degeneracy) {
  return "gammaU_J2=" + format_number(g) + " ground space is " + std::to_string(degeneracy) + "-fold degenerate";
}

}  // namespace

Target parse_target(std::string_view text) {
  const std::string label(text);
  if (text.starts_with("c:")) {
    const auto v = parse_ints(text.substr(2), text, 2);
    return {label, [s = v[0], r = v[1]](int d, int pairs) { return build_c_sr(d, s, r, pairs); }};
  }
  if (text.starts_with("q:")) {
    const auto v = parse_ints(text.substr(2), text, 2);
    return {label, [s = v[0], r = v[1]](int d, int pairs) {
              if (pairs != 2) throw DomainError("q targets need N = 2");
              return build_q_sr(d, s, r);
            }};
  }
  if (text.starts_with("block:")) {
    const int M = parse_ints(text.substr(6), text, 1)[0];
    return {label, [M](int d, int pairs) {
              if (pairs != M) throw DomainError("block target size must equal N");
              return build_block(d, M);
            }};
  }
  std::string_view body = text;
  if (body.starts_with('[') && body.ends_with(']')) body = body.substr(1, body.size() - 2);
  const Partition p = Partition::parse(body);
  return {p.to_string(), [p](int d, int pairs) {
            if (p.total() != pairs) throw DomainError("partition " + p.to_string() + " does not sum to N");
            return build_partition_state(d, p).state;
          }};
}

StateVector adapt_target(const StateVector& target, const Basis& space) {
  const Basis& tb = target.basis();
  if (tb.kind() == space.kind()) return target;
  if (tb.kind() == BasisKind::pair) return pair_to_full(target);
  return full_to_pair(target);
}

CsvTable cmd_ground_state(const SweepConfig& c) {
  c.validate();
  const ModelParams p = c.params_single();
  const GroundSpace gs = solve_point(c, p);
  CsvTable t;
  describe(t, c);
  t.comment("gamma=" + format_number(p.gamma));
  if (p.J > 0.0) t.comment("gammaU_J2=" + format_number(p.reduced_gamma()));
  t.comment("dimension=" + std::to_string(gs.basis->size()));
  t.comment("energy=" + format_number(gs.energy));
  t.comment("degeneracy=" + std::to_string(gs.degeneracy));
  if (gs.degeneracy > 1)
    t.comment("degenerate ground space: amplitudes are vector 0 of " + std::to_string(gs.degeneracy));
  const StateVector v = gs.state(0);
  const Basis& b = *gs.basis;
  if (b.kind() == BasisKind::pair) {
    t.set_header({"mask", "re", "im"});
    for (std::size_t i = 0; i < b.size(); ++i)
      t.add_row({format_mask(b.key(i)), format_number(v[i].real()), format_number(v[i].imag())});
  } else {
    t.set_header({"mask_a", "mask_b", "re", "im"});
    for (std::size_t i = 0; i < b.size(); ++i) {
      const FullConfig cfg = b.full_config(i);
      t.add_row({format_mask(cfg.mask_a), format_mask(cfg.mask_b), format_number(v[i].real()),
                 format_number(v[i].imag())});
    }
  }
  return t;
}

CsvTable cmd_fidelity_scan(const SweepConfig& c) {
  c.validate();
  const int pairs = c.pairs();
  if (c.targets.empty()) throw DomainError("fidelity-scan needs at least one target");
  std::vector<std::string> labels;
  std::vector<StateVector> raw;
  for (const auto& text : c.targets) {
    const Target target = parse_target(text);
    labels.push_back(target.label);
    raw.push_back(target.build(c.d, pairs));
  }
  CsvTable t;
  describe(t, c);
  std::vector<std::string> header{"gamma", "gammaU_J2"};
  header.insert(header.end(), labels.begin(), labels.end());
  t.set_header(header);

  const auto points = evaluate_grid(c.grid.values(), c.jobs, [&](double g) {
    const ModelParams p = c.params_at(g);
    const GroundSpace gs = solve_point(c, p);
    PointOutput out;
    if (gs.degeneracy > 1) out.comments.push_back(degeneracy_note(g, gs.degeneracy) + "; fidelity is the projection onto it");
    std::vector<std::string> row{format_number(p.gamma), format_number(g)};
    for (const auto& target : raw) {
      const StateVector adapted = adapt_target(target, *gs.basis);
      row.push_back(format_number(adapted.norm() < 1e-14 ? 0.0 : fidelity(gs, adapted)));
    }
    out.rows.push_back(std::move(row));
    return out;
  });
  collect(t, points);
  return t;
}

CsvTable cmd_chi(const SweepConfig& c) {
  c.validate(false);
  CsvTable t;
  t.comment("chi_N of the contiguous M-block coboson on a ring of d sites");
  t.comment("chi_oracle is computed for d <= " + std::to_string(c.oracle_max_d));
  t.comment("lower_bound is left empty when (N+1) M > d, where the ratio is 0");
  t.set_header({"d", "N", "M", "chi_closed", "chi_closed_exact", "chi_oracle_exact", "oracle_match", "ratio",
                "lower_bound"});
  for (int d = c.d_range.first; d <= c.d_range.last; ++d)
    for (int N = c.n_range.first; N <= c.n_range.last; ++N)
      for (int M = c.m_range.first; M <= c.m_range.last; ++M) {
        if (N * M > d) continue;
        const Rational chi = chi_closed(d, N, M);
        std::string oracle;
        std::string match;
        if (d <= c.oracle_max_d) {
          const Rational o = chi_oracle(d, N, M);
          oracle = to_string(o);
          match = o == chi ? "1" : "0";
        }
        const Rational next = chi_closed(d, N + 1, M);
        t.add_row({std::to_string(d), std::to_string(N), std::to_string(M), format_number(to_double(chi)),
                   to_string(chi), oracle, match, format_number(to_double(next / chi)),
                   (N + 1) * M <= d ? format_number(chi_ratio_lower_bound(d, N, M)) : std::string()});
      }
  return t;
}

CsvTable cmd_purity_scan(const SweepConfig& c) {
  c.validate();
  const int N = c.pairs();
  const double uniform = 1.0 - uniform_state_purity(c.d, N);
  const auto block = block_state_purity(c.d, N);
  CsvTable t;
  describe(t, c);
  t.comment("uniform_checkpoint is 1 - P1 of |1+...+1>, the ground state at gammaU_J2 = 4");
  t.comment("plateau_checkpoint is 1 - P1 of the block |N>, the large-gamma limit (empty when unknown)");
  t.set_header({"gammaU_J2", "one_minus_P1", "uniform_checkpoint", "plateau_checkpoint"});
  const std::string plateau = block ? format_number(1.0 - *block) : "";
  const auto points = evaluate_grid(c.grid.values(), c.jobs, [&](double g) {
    const GroundSpace gs = solve_point(c, c.params_at(g));
    PointOutput out;
    if (gs.degeneracy > 1) out.comments.push_back(degeneracy_note(g, gs.degeneracy) + "; vector 0 is used");
    const double p1 = single_pair_purity(pair_ground_state(gs)).purity;
    out.rows.push_back({format_number(g), format_number(1.0 - p1), format_number(uniform), plateau});
    return out;
  });
  collect(t, points);
  return t;
}

CsvTable cmd_g2_scan(const SweepConfig& c) {
  c.validate();
  c.pairs();
  CsvTable t;
  describe(t, c);
  t.comment("g2 between site 0 and site |i-j|");
  t.set_header({"gammaU_J2", "separation", "g2"});
  const auto points = evaluate_grid(c.grid.values(), c.jobs, [&](double g) {
    const GroundSpace gs = solve_point(c, c.params_at(g));
    PointOutput out;
    if (gs.degeneracy > 1) out.comments.push_back(degeneracy_note(g, gs.degeneracy) + "; vector 0 is used");
    const StateVector psi = pair_ground_state(gs);
    for (int sep = 1; sep <= c.d / 2; ++sep)
      out.rows.push_back({format_number(g), std::to_string(sep), format_number(g2(psi, 0, sep))});
    return out;
  });
  collect(t, points);
  return t;
}

CsvTable cmd_energy_ledger(const SweepConfig& c) {
  c.validate(false);
  const int N = c.pairs();
  if (!(c.J > 0.0)) throw DomainError("energy-ledger needs J > 0");
  const double jbar = 2.0 * c.J * c.J / c.U;
  const EnergyLedger reference = energy_ledger(N, jbar, 0.0);
  const double threshold = to_double(reference.threshold_gamma_u_over_j2);
  CsvTable t;
  t.comment("N=" + std::to_string(N) + " J=" + format_number(c.J) + " U=" + format_number(c.U));
  t.comment("energy of |M+1+...+1> under the non-adjacency assumption");
  t.comment("threshold_gammabar_over_jbar=" + to_string(reference.threshold_gammabar_over_jbar));
  t.comment("threshold_gammaU_J2=" + to_string(reference.threshold_gamma_u_over_j2));
  t.comment("the final row with M=0 marks the M=1 / M=N crossing");
  t.set_header({"gammaU_J2", "M", "energy"});
  const auto energies_at = [&](double g) {
    const double gamma = g * c.J * c.J / c.U;
    return energy_ledger(N, jbar, 2.0 * (gamma - jbar));
  };
  for (double g : c.grid.values())
    for (const auto& row : energies_at(g).rows)
      t.add_row({format_number(g), std::to_string(row.M), format_number(row.energy)});
  t.add_row({format_number(threshold), "0", format_number(energies_at(threshold).rows.front().energy)});
  return t;
}

VerifyResult cmd_verify(const SweepConfig& c) {
  VerifyResult result;
  CsvTable& t = result.table;
  t.set_header({"check", "value", "expected", "tolerance", "status"});
  const SolverOptions options = c.solver_options();
  const auto record = [&](const std::string& name, double value, double expected, double tol) {
    const bool ok = std::abs(value - expected) <= tol;
    if (!ok) ++result.failures;
    t.add_row({name, format_number(value), format_number(expected), format_number(tol), ok ? "PASS" : "FAIL"});
  };

  {  // two fermions, J = 1, U = 3: r0 = 1/2, E = -5
    const ModelParams p{.J = 1.0, .U = 3.0, .sites = 8};
    const auto exact = analytic_two_fermion(p.J, p.U);
    const auto chain = solve_relative_chain(ChainKind::two_fermion, p, 400, options);
    record("two_fermion_energy", chain.energy, exact.energy, 1e-8 * std::abs(exact.energy));
    double worst = 0.0;
    for (std::size_t s = 1; s <= 20; ++s)
      worst = std::max(worst, std::abs(chain.profile[s + 1] / chain.profile[s] - exact.r0));
    record("two_fermion_ratio_error", worst, 0.0, 1e-6);
  }
  {  // two pairs with jbar = 1
    ModelParams p{.J = 1.0, .U = 2.0, .gamma = 3.0, .sites = 8};
    const auto exact = analytic_two_pair(p.jbar(), p.gamma);
    const auto chain = solve_relative_chain(ChainKind::two_pair, p, 400, options);
    record("two_pair_energy", chain.energy, exact.energy, 1e-8 * std::abs(exact.energy));
    p.gamma = 1.9;
    record("two_pair_unbound_tail", solve_relative_chain(ChainKind::two_pair, p, 400, options).tail.bound ? 1 : 0,
           0, 0);
  }
  record("chi_d4_N2_M1", to_double(chi_closed(4, 2, 1)), 0.75, 0);
  record("chi_d8_N2_M2", to_double(chi_closed(8, 2, 2)), 0.625, 0);
  record("chi_closed_equals_oracle_d10_N3_M2", chi_closed(10, 3, 2) == chi_oracle(10, 3, 2) ? 1 : 0, 1, 0);
  {
    const auto ladder = ladder_report(10, 10, 1);
    int bad = 0;
    for (int N = 1; N <= 10; ++N)
      bad += ladder.alphas_squared[static_cast<std::size_t>(N - 1)] != Rational(10 - N + 1, 10) ||
             ladder.eps_norm(N) != 0;
    record("ladder_d10_M1_violations", bad, 0, 0);
    const double ratio = to_double(chi_closed(10000, 11, 3) / chi_closed(10000, 10, 3));
    const double lower = chi_ratio_lower_bound(10000, 10, 3);
    record("ladder_d10000_N10_M3_within_bounds", ratio >= lower && ratio <= 1.0 ? 1 : 0, 1, 0);
  }
  {  // gamma U / J^2 = 4: the uniform state is the exact ground state
    const ModelParams p{.J = 1.0, .U = 1000.0, .gamma = 0.004, .sites = 10, .n_a = 3, .n_b = 3};
    const auto gs = ground_space(build_effective_hamiltonian(p), options);
    record("uniform_ground_energy_d10_N3", gs.energy, -6.0 * p.jbar(), 1e-10 * 6.0 * p.jbar());
    record("uniform_ground_fidelity_d10_N3",
           fidelity(gs, build_partition_state(10, Partition::parse("1+1+1")).state), 1.0, 1e-10);
  }
  {
    const ModelParams p{.J = 1.0, .U = 1000.0, .gamma = 0.004, .sites = 10, .n_a = 2, .n_b = 2};
    const auto gs = ground_space(build_effective_hamiltonian(p), options);
    record("P1_ground_gammaU_J2_4_d10_N2", single_pair_purity(pair_ground_state(gs)).purity,
           uniform_state_purity(10, 2), 1e-6);
  }
  record("P1_block_d10_N2", single_pair_purity(build_block(10, 2)).purity, 0.15, 1e-10);
  record("P1_block_d8_N4", single_pair_purity(build_block(8, 4)).purity, *block_state_purity(8, 4), 1e-10);
  {
    const ModelParams p{.J = 1.0, .U = 1000.0, .gamma = 0.004, .sites = 10, .n_a = 4, .n_b = 4};
    const StateVector psi = pair_ground_state(ground_space(build_effective_hamiltonian(p), options));
    double worst = 0.0;
    for (int sep = 1; sep <= 5; ++sep) worst = std::max(worst, std::abs(g2(psi, 0, sep) - 5.0 / 6.0));
    record("g2_uniform_d10_N4_error", worst, 0.0, 1e-10);
    const StateVector block = build_block(10, 3);
    double largest = 0.0;
    for (int sep = 3; sep <= 5; ++sep) largest = std::max(largest, std::abs(g2(block, 0, sep)));
    record("g2_block_d10_N3_long_range", largest, 0.0, 0.0);
  }
  {
    const auto ledger = energy_ledger(10, 1.0, 1.0);
    record("ledger_threshold_N10_is_20_over_9", ledger.threshold_gammabar_over_jbar == Rational(20, 9) ? 1 : 0, 1,
           0);
    const auto three = energy_ledger(3, 1.0, 1.0);
    record("ledger_threshold_gammaU_J2_N3", to_double(three.threshold_gamma_u_over_j2), 2.0 + 2.0 * 3 / 2, 1e-12);
  }
  record("competing_fidelity_d8", fidelity(to_pair_sector(build_c_sr(8, 0, 0, 2)), build_q_sr(8, 1, 0)),
         8.0 / 28.0, 1e-12);
  record("square_norm_slater", square_norm_test(CreationOperator{{Complex{1.0, 0.0}, {0, 1}}}).norm_squared, 0, 0);
  {
    const std::vector<double> lambdas{0.4, 0.3, 0.2, 0.1};
    record("square_norm_bipartite", square_norm_test(bipartite_operator(lambdas)).norm_squared, 2.0 * (1.0 - 0.3),
           1e-10);
    const std::vector<CreationOperator> blocks{maximally_entangled_block(0, 8, 2), maximally_entangled_block(8, 8, 2)};
    const auto r = square_norm_test(blocks);
    record("square_norm_two_blocks_vs_omega", r.norm_squared, *r.predicted_norm_squared, 1e-12);
  }
  {
    ModelParams p{.J = 1.0, .U = 1000.0, .gamma = 0.006, .sites = 6, .n_a = 2, .n_b = 2};
    const auto report = spectral_equivalence_check(p, 3, options);
    record("effective_model_fidelity_d6_N2", report.fidelity.value_or(0.0) >= 0.999 ? 1 : 0, 1, 0);
  }
  t.comment("analytic checkpoints: " + std::to_string(t.rows().size()) + " checks, " +
            std::to_string(result.failures) + " failed");
  return result;
}

}  // namespace cobos::cli
