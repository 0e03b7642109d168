#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <bit>
#include <random>

#include "cobos/errors.hpp"
#include "cobos/kernels.hpp"
#include "cobos/model.hpp"
#include "cobos/solve.hpp"

using namespace cobos;

namespace {

Eigen::MatrixXcd dense(const SparseOperator& H) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(H.dim()),
                                              static_cast<Eigen::Index>(H.dim()));
  for (const auto& e : H.entries())
    m(static_cast<Eigen::Index>(e.row), static_cast<Eigen::Index>(e.col)) += e.value;
  return m;
}

StateVector random_state(BasisPtr b, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<Complex> amps(b->size());
  for (auto& a : amps) a = {g(rng), g(rng)};
  return StateVector(std::move(b), std::move(amps)).normalized();
}

double max_diff(const StateVector& x, const StateVector& y) {
  double diff = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) diff = std::max(diff, std::abs(x[i] - y[i]));
  return diff;
}

int adjacent_pairs(Mask m, int d) {
  int count = 0;
  for (int k = 0; k < d; ++k) count += (m >> k & 1) && (m >> ((k + 1) % d) & 1);
  return count;
}

}  // namespace

TEST_CASE("sparse operator merges duplicates and drops zeros") {
  SparseOperator op(3, {{0, 1, 1.0}, {0, 1, 1.0}, {1, 0, 2.0}, {2, 2, 1.0}, {2, 2, -1.0}});
  CHECK(op.nnz() == 2);
  CHECK(op.element(0, 1) == Complex{2.0, 0.0});
  CHECK(op.element(2, 2) == Complex{});
  CHECK(op.hermitian());
  SparseOperator skew(2, {{0, 1, Complex{0, 1}}, {1, 0, Complex{0, 1}}});
  CHECK_FALSE(skew.hermitian());
  CHECK(op.norm_bound() == doctest::Approx(2.0));
}

TEST_CASE("two sites, one fermion each, J=1: explicit 4x4 matrix and ground energy -4") {
  ModelParams p{.J = 1.0, .U = 0.0, .gamma = 0.0, .sites = 2, .n_a = 1, .n_b = 1};
  const auto H = build_full_hamiltonian(p);
  REQUIRE(H.dim() == 4);
  // order (a0 b0), (a0 b1), (a1 b0), (a1 b1) by packed key: maskA major
  const auto& b = H.basis();
  Eigen::Matrix4cd expected = Eigen::Matrix4cd::Zero();
  auto idx = [&](Mask a, Mask bb) { return static_cast<Eigen::Index>(*b.index_of(FullConfig{a, bb})); };
  // each bond is counted twice on a periodic two-site ring
  expected(idx(1, 1), idx(2, 1)) = expected(idx(2, 1), idx(1, 1)) = -2.0;
  expected(idx(1, 2), idx(2, 2)) = expected(idx(2, 2), idx(1, 2)) = -2.0;
  expected(idx(1, 1), idx(1, 2)) = expected(idx(1, 2), idx(1, 1)) = -2.0;
  expected(idx(2, 1), idx(2, 2)) = expected(idx(2, 2), idx(2, 1)) = -2.0;
  CHECK((dense(H) - expected).norm() < 1e-14);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(expected);
  CHECK(es.eigenvalues()[0] == doctest::Approx(-4.0));
  CHECK(ground_space(H).energy == doctest::Approx(-4.0));
}

TEST_CASE("point interaction diagonal counts double occupancies") {
  ModelParams p{.J = 0.0, .U = 3.5, .gamma = 0.0, .sites = 5, .n_a = 2, .n_b = 3};
  const auto H = build_full_hamiltonian(p);
  const auto& b = H.basis();
  for (std::size_t i = 0; i < b.size(); ++i) {
    const auto c = b.full_config(i);
    CHECK(H.element(i, i).real() == doctest::Approx(-3.5 * std::popcount(c.mask_a & c.mask_b)));
  }
}

TEST_CASE("nearest-neighbour term counts A-B neighbours in both orientations") {
  ModelParams p{.J = 0.0, .U = 0.0, .gamma = 1.0, .sites = 6, .n_a = 2, .n_b = 2};
  const auto H = build_full_hamiltonian(p);
  const auto& b = H.basis();
  for (std::size_t i = 0; i < b.size(); ++i) {
    const auto c = b.full_config(i);
    int count = 0;
    for (int k = 0; k < 6; ++k) {
      const int l = (k + 1) % 6;
      count += (c.mask_a >> k & 1) && (c.mask_b >> l & 1);
      count += (c.mask_a >> l & 1) && (c.mask_b >> k & 1);
    }
    CHECK(H.element(i, i).real() == doctest::Approx(-static_cast<double>(count)));
  }
}

TEST_CASE("J=0, gamma=0, d=4: ground energy -U with four-fold degeneracy") {
  ModelParams p{.J = 0.0, .U = 2.0, .gamma = 0.0, .sites = 4, .n_a = 1, .n_b = 1};
  const auto gs = ground_space(build_full_hamiltonian(p));
  CHECK(gs.energy == doctest::Approx(-2.0));
  CHECK(gs.degeneracy == 4);
  for (std::size_t v = 0; v < gs.vectors.size(); ++v) {
    const auto psi = gs.state(v);
    for (std::size_t i = 0; i < psi.size(); ++i) {
      const auto c = psi.basis().full_config(i);
      if (c.mask_a != c.mask_b) CHECK(std::abs(psi[i]) < 1e-12);
    }
  }
}

TEST_CASE("full Hamiltonian is Hermitian and commutes with translation") {
  ModelParams p{.J = 0.7, .U = 3.0, .gamma = 0.4, .sites = 6, .n_a = 2, .n_b = 2};
  const auto H = build_full_hamiltonian(p);
  CHECK(H.hermitian());
  const auto psi = random_state(H.basis_ptr(), 11);
  for (int s = 1; s < 6; ++s) CHECK(max_diff(translate(matvec(H, psi), s), matvec(H, translate(psi, s))) < 1e-12);
}

TEST_CASE("matrix-free and stored application agree, serial and parallel bit-identical") {
  ModelParams p{.J = 0.9, .U = 5.0, .gamma = 0.3, .sites = 7, .n_a = 3, .n_b = 2};
  const auto rules = full_hamiltonian_rules(p);
  const auto H = assemble(rules);
  const auto psi = random_state(H.basis_ptr(), 5);
  std::vector<Complex> y1(H.dim()), y2(H.dim()), y3(H.dim()), y4(H.dim());
  kernels::matvec_serial(H, psi.amplitudes(), y1);
  kernels::matvec_parallel(H, psi.amplitudes(), y2);
  kernels::matrix_free_serial(rules, psi.amplitudes(), y3);
  kernels::matrix_free_parallel(rules, psi.amplitudes(), y4);
  for (std::size_t i = 0; i < H.dim(); ++i) {
    CHECK(y1[i] == y2[i]);
    CHECK(y3[i] == y4[i]);
    CHECK(std::abs(y1[i] - y3[i]) < 1e-13);
  }
}

TEST_CASE("effective Hamiltonian matches its defining matrix elements") {
  ModelParams p{.J = 1.0, .U = 50.0, .gamma = 0.3, .sites = 7, .n_a = 3, .n_b = 3};
  const auto H = build_effective_hamiltonian(p);
  const double jbar = 2.0 / 50.0;
  const double bond = 2.0 * 0.3 - 4.0 / 50.0;
  const auto& b = H.basis();
  CHECK(H.hermitian());
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) {
      const Mask x = b.key(i);
      const Mask y = b.key(j);
      double expected = 0.0;
      if (i == j) {
        expected = -bond * adjacent_pairs(x, 7);
      } else if (std::popcount(x ^ y) == 2) {
        const Mask moved = x ^ y;
        for (int k = 0; k < 7; ++k)
          if (moved == ((Mask{1} << k) | (Mask{1} << ((k + 1) % 7)))) expected = -jbar;
      }
      CHECK(H.element(i, j).real() == doctest::Approx(expected).epsilon(1e-14));
    }
}

TEST_CASE("effective model at gamma = 4J^2/U: uniform state is the ground state at -2N jbar") {
  for (int d : {6, 8, 10})
    for (int n : {2, 3, 4}) {
      ModelParams p{.J = 1.0, .U = 100.0, .gamma = 4.0 / 100.0, .sites = d, .n_a = n, .n_b = n};
      const auto H = build_effective_hamiltonian(p);
      const auto uniform = StateVector(H.basis_ptr(), std::vector<Complex>(H.dim(), 1.0)).normalized();
      const auto Hu = matvec(H, uniform);
      CHECK(max_diff(Hu, uniform.scaled(-2.0 * n * p.jbar())) < 1e-14);
      CHECK(ground_space(H).energy == doctest::Approx(-2.0 * n * p.jbar()));
    }
}

TEST_CASE("model parameter validation") {
  CHECK_THROWS_AS(build_full_hamiltonian({.J = -1.0, .sites = 4}), DomainError);
  CHECK_THROWS_AS(build_full_hamiltonian({.J = 1.0, .sites = 1}), DomainError);
  CHECK_THROWS_AS(build_effective_hamiltonian({.J = 1.0, .U = 0.0, .sites = 4}), DomainError);
  CHECK_THROWS_AS(build_full_hamiltonian({.J = 1.0, .U = std::nan(""), .sites = 4}), DomainError);
  ModelParams p{.J = 2.0, .U = 8.0, .gamma = 3.0};
  CHECK(p.jbar() == doctest::Approx(1.0));
  CHECK(p.gammabar() == doctest::Approx(4.0));
  CHECK(p.reduced_gamma() == doctest::Approx(6.0));
}

TEST_CASE("relative chains carry the momentum phase on their hops") {
  ModelParams p{.J = 1.0, .U = 3.0, .gamma = 0.0, .sites = 8, .n_a = 1, .n_b = 1};
  const auto H0 = build_relative_chain(ChainKind::two_fermion, p, 0, 10);
  CHECK(H0.dim() == 21);
  CHECK(H0.element(10, 10) == Complex{-3.0, 0.0});
  CHECK(H0.element(11, 10) == Complex{-2.0, 0.0});
  CHECK(H0.hermitian());
  const auto Hhalf = build_relative_chain(ChainKind::two_fermion, p, 4, 10);
  CHECK(Hhalf.element(11, 10) == Complex{});
  const auto Hq = build_relative_chain(ChainKind::two_fermion, p, 2, 10);
  CHECK(std::abs(Hq.element(11, 10) - Complex{-1.0, -1.0}) < 1e-15);

  ModelParams q{.J = 1.0, .U = 10.0, .gamma = 0.5, .sites = 8};
  const auto P = build_relative_chain(ChainKind::two_pair, q, 0, 12);
  CHECK(P.dim() == 12);
  CHECK(P.element(0, 0).real() == doctest::Approx(-2.0 * (0.5 - 0.2)));
  CHECK(P.element(1, 0).real() == doctest::Approx(-0.4));
  CHECK_THROWS_AS(build_relative_chain(ChainKind::two_pair, q, 0, 2), DomainError);
}
