#include "cobos/model.hpp"

#include <cmath>
#include <string>

#include "cobos/errors.hpp"
#include "cobos/kernels.hpp"
#include "phase.hpp"

namespace cobos {

namespace {

void require_nonnegative(double v, const char* name) {
  if (!std::isfinite(v) || v < 0.0)
    throw DomainError(std::string(name) + " must be finite and >= 0");
}

}  // namespace

double ModelParams::jbar() const {
  if (U == 0.0) throw DomainError("effective model undefined for U == 0");
  return 2.0 * J * J / U;
}

double ModelParams::gammabar() const { return 2.0 * (gamma - jbar()); }

double ModelParams::reduced_gamma() const {
  if (J == 0.0) throw DomainError("gamma U / J^2 undefined for J == 0");
  return gamma * U / (J * J);
}

double ModelParams::effective_constant() const {
  if (U == 0.0) throw DomainError("effective model undefined for U == 0");
  return -n_a * (U + 4.0 * J * J / U);
}

void validate(const ModelParams& p) {
  require_nonnegative(p.J, "J");
  require_nonnegative(p.U, "U");
  require_nonnegative(p.gamma, "gamma");
  if (p.sites < 2) throw DomainError("model requires d >= 2");
  if (p.n_a < 0 || p.n_b < 0) throw DomainError("particle counts must be >= 0");
}

ExtendedHubbardRules::ExtendedHubbardRules(const ModelParams& params, BasisPtr basis)
    : basis_(std::move(basis)),
      d_(params.sites),
      J_(params.J),
      U_(params.U),
      gamma_(params.gamma) {}

PairChainRules::PairChainRules(double hop, double bond, BasisPtr basis)
    : basis_(std::move(basis)), d_(basis_->sites()), hop_(hop), bond_(bond) {
  if (!std::isfinite(hop) || !std::isfinite(bond))
    throw DomainError("pair chain couplings must be finite");
  if (d_ < 2) throw DomainError("pair chain requires d >= 2");
}

HamiltonianRules full_hamiltonian_rules(const ModelParams& params) {
  validate(params);
  return ExtendedHubbardRules(params, Basis::full(params.sites, params.n_a, params.n_b));
}

HamiltonianRules effective_hamiltonian_rules(const ModelParams& params) {
  validate(params);
  if (params.U == 0.0) throw DomainError("effective model undefined for U == 0");
  const double jbar = params.jbar();
  return PairChainRules(jbar, 2.0 * params.gamma - 2.0 * jbar,
                        Basis::pair(params.sites, params.n_a));
}

SparseOperator assemble(const HamiltonianRules& rules) {
  return std::visit(
      [](const auto& r) {
        std::vector<Entry> entries;
        const std::size_t dim = r.basis()->size();
        for (std::size_t col = 0; col < dim; ++col)
          r.act(col, [&](std::size_t row, Complex v) { entries.push_back({row, col, v}); });
        return SparseOperator(r.basis(), std::move(entries));
      },
      rules);
}

SparseOperator build_full_hamiltonian(const ModelParams& params) {
  return assemble(full_hamiltonian_rules(params));
}

SparseOperator build_effective_hamiltonian(const ModelParams& params) {
  return assemble(effective_hamiltonian_rules(params));
}

SparseOperator build_pair_hamiltonian(int sites, int pairs, double jbar, double gammabar) {
  return assemble(PairChainRules(jbar, gammabar, Basis::pair(sites, pairs)));
}

SparseOperator build_relative_chain(ChainKind kind, const ModelParams& params, int r,
                                    int cutoff) {
  validate(params);
  if (cutoff < 3) throw DomainError("relative chain cutoff must be >= 3");
  const Complex phase = detail::unit_phase(r, params.sites);
  std::vector<Entry> entries;
  if (kind == ChainKind::two_fermion) {
    const std::size_t dim = 2 * static_cast<std::size_t>(cutoff) + 1;
    const Complex up = -params.J * (1.0 + phase);  // <s+1|H|s>
    for (std::size_t i = 0; i + 1 < dim; ++i) {
      entries.push_back({i + 1, i, up});
      entries.push_back({i, i + 1, std::conj(up)});
    }
    entries.push_back({static_cast<std::size_t>(cutoff), static_cast<std::size_t>(cutoff),
                       Complex{-params.U, 0.0}});
    return SparseOperator(dim, std::move(entries));
  }
  const double jbar = params.jbar();
  const double gammabar = 2.0 * (params.gamma - jbar);
  const std::size_t dim = static_cast<std::size_t>(cutoff);
  const Complex up = -jbar * (1.0 + phase);
  for (std::size_t i = 0; i + 1 < dim; ++i) {
    entries.push_back({i + 1, i, up});
    entries.push_back({i, i + 1, std::conj(up)});
  }
  entries.push_back({0, 0, Complex{-gammabar, 0.0}});
  return SparseOperator(dim, std::move(entries));
}

StateVector matvec(const SparseOperator& op, const StateVector& x) {
  require_same_space(op.basis(), x.basis(), "matvec");
  std::vector<Complex> y(op.dim());
  kernels::matvec_parallel(op, x.amplitudes(), y);
  return StateVector(x.basis_ptr(), std::move(y));
}

StateVector matvec(const HamiltonianRules& rules, const StateVector& x) {
  const BasisPtr& basis = std::visit([](const auto& r) -> const BasisPtr& { return r.basis(); }, rules);
  require_same_space(*basis, x.basis(), "matvec");
  std::vector<Complex> y(basis->size());
  kernels::matrix_free_parallel(rules, x.amplitudes(), y);
  return StateVector(x.basis_ptr(), std::move(y));
}

Complex expectation(const SparseOperator& op, const StateVector& psi) {
  return inner_product(psi, matvec(op, psi));
}

}  // namespace cobos
