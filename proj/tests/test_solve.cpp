#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <random>

#include "cobos/errors.hpp"
#include "cobos/model.hpp"
#include "cobos/solve.hpp"

using namespace cobos;

namespace {

std::vector<double> dense_spectrum(const SparseOperator& H) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(H.dim()),
                                              static_cast<Eigen::Index>(H.dim()));
  for (const auto& e : H.entries())
    m(static_cast<Eigen::Index>(e.row), static_cast<Eigen::Index>(e.col)) = e.value;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
  return {es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size()};
}

double residual(const SparseOperator& H, const std::vector<Complex>& v, double e) {
  std::vector<Complex> w(H.dim());
  for (const auto& en : H.entries()) w[en.row] += en.value * v[en.col];
  double r = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) r += std::norm(w[i] - e * v[i]);
  return std::sqrt(r);
}

void check_orthonormal(const GroundSpace& gs) {
  for (std::size_t a = 0; a < gs.vectors.size(); ++a)
    for (std::size_t b = 0; b < gs.vectors.size(); ++b) {
      Complex s{};
      for (std::size_t i = 0; i < gs.vectors[a].size(); ++i)
        s += std::conj(gs.vectors[a][i]) * gs.vectors[b][i];
      CHECK(std::abs(s - (a == b ? 1.0 : 0.0)) < 1e-10);
    }
}

}  // namespace

TEST_CASE("diagonal operator") {
  SparseOperator H(3, {{0, 0, 3.0}, {1, 1, 1.0}, {2, 2, 2.0}});
  const auto gs = ground_space(H);
  CHECK(gs.energy == doctest::Approx(1.0));
  CHECK(gs.degeneracy == 1);
  CHECK(std::abs(gs.vectors[0][1] - 1.0) < 1e-14);
}

TEST_CASE("non-Hermitian input is rejected") {
  SparseOperator H(2, {{0, 1, 1.0}});
  CHECK_THROWS_AS(ground_space(H), DomainError);
}

TEST_CASE("effective model d=4 N=2 at gamma = 2 jbar: lowest energy -4 jbar") {
  ModelParams p{.J = 1.0, .U = 20.0, .gamma = 0.2, .sites = 4, .n_a = 2, .n_b = 2};
  const auto H = build_effective_hamiltonian(p);
  const auto gs = ground_space(H);
  CHECK(gs.energy == doctest::Approx(-4.0 * p.jbar()).epsilon(1e-12));
  CHECK(dense_spectrum(H)[0] == doctest::Approx(gs.energy).epsilon(1e-12));
}

TEST_CASE("two-site toy with known spectrum matches the dense oracle") {
  ModelParams p{.J = 0.8, .U = 1.7, .gamma = 0.3, .sites = 2, .n_a = 1, .n_b = 1};
  const auto H = build_full_hamiltonian(p);
  const auto gs = ground_space(H);
  CHECK(std::abs(gs.energy - dense_spectrum(H)[0]) < 1e-12);
  CHECK(residual(H, gs.vectors[0], gs.energy) < 1e-10);
}

TEST_CASE("degenerate ground spaces are fully resolved by both solvers") {
  ModelParams p{.J = 0.0, .U = 1.0, .gamma = 0.0, .sites = 6, .n_a = 1, .n_b = 1};
  const auto H = build_full_hamiltonian(p);
  for (auto method : {SolverMethod::dense, SolverMethod::iterative}) {
    const auto gs = ground_space(H, {.method = method});
    CHECK(gs.degeneracy == 6);
    CHECK(gs.energy == doctest::Approx(-1.0));
    check_orthonormal(gs);
    for (const auto& v : gs.vectors) CHECK(residual(H, v, gs.energy) < 1e-10);
  }
}

TEST_CASE("iterative and dense solvers agree") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 6; ++trial) {
    ModelParams p{.J = 0.5 + u(rng), .U = 4.0 * u(rng), .gamma = u(rng), .sites = 6,
                  .n_a = 2, .n_b = 2};
    const auto H = build_full_hamiltonian(p);
    const auto dense = ground_space(H, {.method = SolverMethod::dense});
    const auto iter = ground_space(H, {.method = SolverMethod::iterative});
    CHECK(std::abs(dense.energy - iter.energy) < 1e-8);
    CHECK(dense.degeneracy == iter.degeneracy);
    check_orthonormal(iter);
    const auto dl = lowest_levels(H, 5, {.method = SolverMethod::dense});
    const auto il = lowest_levels(H, 5, {.method = SolverMethod::iterative});
    for (std::size_t k = 0; k < 5; ++k) CHECK(std::abs(dl[k] - il[k]) < 1e-8);
  }
  ModelParams p{.J = 1.0, .U = 100.0, .gamma = 0.05, .sites = 12, .n_a = 5, .n_b = 5};
  const auto H = build_effective_hamiltonian(p);
  const auto dense = ground_space(H, {.method = SolverMethod::dense});
  const auto iter = ground_space(H, {.method = SolverMethod::iterative});
  CHECK(std::abs(dense.energy - iter.energy) < 1e-8);
  CHECK(dense.degeneracy == iter.degeneracy);
}

TEST_CASE("iterative solver above the dense limit returns small residuals") {
  ModelParams p{.J = 1.0, .U = 4.0, .gamma = 0.5, .sites = 8, .n_a = 3, .n_b = 3};
  const auto H = build_full_hamiltonian(p);
  REQUIRE(H.dim() == 3136);
  const auto gs = ground_space(H);
  CHECK(gs.max_residual <= 1e-10 * std::max(1.0, H.norm_bound()));
  for (const auto& v : gs.vectors) CHECK(residual(H, v, gs.energy) < 1e-9);
  check_orthonormal(gs);
}

TEST_CASE("analytic two-fermion bound state") {
  auto free = analytic_two_fermion(1.0, 0.0);
  CHECK(free.energy == doctest::Approx(-4.0));
  CHECK(free.r0 == doctest::Approx(1.0));
  CHECK_FALSE(free.bound);
  auto s = analytic_two_fermion(1.0, 3.0);
  CHECK(s.energy == doctest::Approx(-5.0));
  CHECK(s.r0 == doctest::Approx(0.5));
  CHECK(s.bound);
  CHECK(s.amplitude(-2) == doctest::Approx(0.25));
  auto limit = analytic_two_fermion(0.0, 2.0);
  CHECK(limit.limit_case);
  CHECK(limit.r0 == 0.0);
  CHECK(limit.energy == -2.0);
  CHECK_THROWS_AS(analytic_two_fermion(-1.0, 1.0), DomainError);
}

TEST_CASE("two-fermion chain oracle, S=200") {
  ModelParams p{.J = 1.0, .U = 3.0, .sites = 8};
  const auto chain = solve_relative_chain(ChainKind::two_fermion, p, 200);
  CHECK(std::abs(chain.energy - (-5.0)) < 1e-10);
  CHECK(chain.tail.bound);
  for (int s = 1; s <= 20; ++s)
    CHECK(chain.profile[static_cast<std::size_t>(s + 1)] / chain.profile[static_cast<std::size_t>(s)] ==
          doctest::Approx(0.5).epsilon(1e-9));
  CHECK(chain.tail.r0_fit == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("recurrence profile agrees with the dense eigenvector where both are accurate") {
  ModelParams p{.J = 1.0, .U = 1.0, .sites = 8};
  const auto H = build_relative_chain(ChainKind::two_fermion, p, 0, 60);
  const auto gs = ground_space(H);
  const auto chain = solve_relative_chain(ChainKind::two_fermion, p, 60);
  for (int s = 0; s <= 60; ++s)
    CHECK(std::abs(std::abs(gs.vectors[0][static_cast<std::size_t>(60 + s)]) -
                   chain.profile[static_cast<std::size_t>(s)]) < 1e-12);
}

TEST_CASE("analytic two-pair bound state") {
  auto s = analytic_two_pair(1.0, 3.0);
  CHECK(s.bound);
  CHECK(s.r0 == doctest::Approx(0.5));
  CHECK(s.energy == doctest::Approx(-5.0));
  auto edge = analytic_two_pair(1.0, 2.0 + 1e-9);
  CHECK(edge.energy == doctest::Approx(-4.0).epsilon(1e-6));
  CHECK_FALSE(analytic_two_pair(1.0, 2.0).bound);
  CHECK_THROWS_AS(analytic_two_pair(0.0, 1.0), DomainError);

  ModelParams p{.J = 1.0, .U = 2.0, .sites = 8};  // jbar = 1
  p.gamma = 3.0;
  const auto chain = solve_relative_chain(ChainKind::two_pair, p, 200);
  CHECK(std::abs(chain.energy - (-5.0)) < 1e-10);
}

TEST_CASE("two-pair threshold: tail criterion matches the bound flag at 2 jbar (1 +- 0.05)") {
  ModelParams p{.J = 1.0, .U = 2.0, .sites = 8};
  for (double f : {0.95, 1.05}) {
    p.gamma = 2.0 * f;
    const auto chain = solve_relative_chain(ChainKind::two_pair, p, 400);
    CHECK(chain.tail.bound == analytic_two_pair(1.0, p.gamma).bound);
  }
}

TEST_CASE("geometric tail fit") {
  std::vector<double> profile;
  for (int s = 0; s < 100; ++s) profile.push_back(std::pow(0.7, s));
  const auto fit = fit_geometric_tail(profile);
  CHECK(fit.bound);
  CHECK(fit.r0_fit == doctest::Approx(0.7).epsilon(1e-12));
  std::vector<double> flat(100, 1.0);
  CHECK_FALSE(fit_geometric_tail(flat).bound);
  CHECK_THROWS_AS(fit_geometric_tail(std::vector<double>{1.0}), DomainError);
}

TEST_CASE("spectral equivalence of full and effective models") {
  ModelParams p{.J = 1.0, .U = 1000.0, .sites = 6, .n_a = 2, .n_b = 2};
  p.gamma = 6.0 / 1000.0;
  const auto r = spectral_equivalence_check(p, 3);
  REQUIRE(r.fidelity.has_value());
  CHECK(*r.fidelity >= 0.999);
  CHECK(r.pair_sector_weight > 0.99);

  // At gamma = 0 what remains is the fourth-order correction: levels and gaps
  // both shrink as U^-3. A single pair alone is shifted by 32 J^4/U^3.
  p.gamma = 0.0;
  const auto free = spectral_equivalence_check(p, 4);
  ModelParams half = p;
  half.U = 500.0;
  const auto coarse = spectral_equivalence_check(half, 4);
  CHECK(coarse.max_level_deviation / free.max_level_deviation == doctest::Approx(8.0).epsilon(0.02));
  CHECK(coarse.max_gap_deviation / free.max_gap_deviation == doctest::Approx(8.0).epsilon(0.02));
  CHECK(free.max_level_deviation * 1e9 < 60.0);
  CHECK(free.max_gap_deviation * 1e9 < 25.0);

  ModelParams zero{.J = 0.0, .U = 1000.0, .sites = 4, .n_a = 2, .n_b = 2};
  const auto degenerate = spectral_equivalence_check(zero, 2);
  CHECK(degenerate.degenerate());
  CHECK(degenerate.full_degeneracy > 1);

  ModelParams weak{.J = 1.0, .U = 50.0, .sites = 4, .n_a = 1, .n_b = 1};
  CHECK_THROWS_AS(spectral_equivalence_check(weak, 2), DomainError);
}
