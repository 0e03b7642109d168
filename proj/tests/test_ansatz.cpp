#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <map>

#include "cobos/ansatz.hpp"
#include "cobos/errors.hpp"

using namespace cobos;

namespace {

double distance(const StateVector& x, const StateVector& y) {
  REQUIRE(x.basis().same_space(y.basis()));
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += std::norm(x[i] - y[i]);
  return std::sqrt(s);
}

double overlap2(const StateVector& x, const StateVector& y) { return std::norm(inner_product(x, y)); }

StateVector combine(const std::vector<std::pair<double, StateVector>>& terms) {
  std::vector<Complex> amps(terms.front().second.size());
  for (const auto& [c, v] : terms)
    for (std::size_t i = 0; i < amps.size(); ++i) amps[i] += c * v[i];
  return StateVector(terms.front().second.basis_ptr(), std::move(amps));
}

}  // namespace

TEST_CASE("partition validation and parsing") {
  CHECK(Partition::parse("3+1").parts() == std::vector<int>{3, 1});
  CHECK(Partition::parse("2,2").parts() == std::vector<int>{2, 2});
  CHECK(Partition::parse("4").to_string() == "4");
  CHECK(Partition::parse("2+1+1").singles() == 2);
  CHECK(Partition::parse("2+1+1").total() == 4);
  CHECK_THROWS_AS(Partition::parse("1+3"), DomainError);
  CHECK_THROWS_AS(Partition::parse("0"), DomainError);
  CHECK_THROWS_AS(Partition::parse("2+"), DomainError);
  CHECK_THROWS_AS(Partition::parse("x"), DomainError);
  CHECK_THROWS_AS(Partition(std::vector<int>{}), DomainError);
}

TEST_CASE("single c_sr states are orthonormal over all d^2 labels") {
  const int d = 4;
  std::vector<StateVector> states;
  for (int s = 0; s < d; ++s)
    for (int r = 0; r < d; ++r) states.push_back(build_c_sr(d, s, r, 1));
  for (std::size_t a = 0; a < states.size(); ++a) {
    CHECK(std::abs(states[a].norm() - 1.0) < 1e-12);
    for (std::size_t b = a + 1; b < states.size(); ++b)
      CHECK(std::abs(inner_product(states[a], states[b])) < 1e-12);
  }
}

TEST_CASE("c_00 is the uniform maximally entangled pair") {
  const int d = 6;
  const auto c = build_c_sr(d, 0, 0, 1);
  const auto& b = c.basis();
  for (std::size_t i = 0; i < b.size(); ++i) {
    const auto cfg = b.full_config(i);
    const double expected = cfg.mask_a == cfg.mask_b ? 1.0 / std::sqrt(d) : 0.0;
    CHECK(std::abs(c[i] - expected) < 1e-15);
  }
}

TEST_CASE("c_sr powers are normalized by chi_N N!") {
  for (int d : {4, 5, 6})
    for (int n = 1; n <= d; ++n)
      for (int s : {0, 1})
        for (int r : {0, 1}) CHECK(std::abs(build_c_sr(d, s, r, n).norm() - 1.0) < 1e-12);
}

TEST_CASE("filling every mode gives the same state for any label") {
  const int d = 4;
  const auto ref = build_c_sr(d, 0, 0, d);
  for (int s = 0; s < d; ++s)
    for (int r = 0; r < d; ++r) {
      const auto other = build_c_sr(d, s, r, d);
      CHECK(overlap2(ref, other) == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(distance(ref, other) < 1e-12);
    }
}

TEST_CASE("c_sr argument errors") {
  CHECK_THROWS_AS(build_c_sr(4, 4, 0, 1), DomainError);
  CHECK_THROWS_AS(build_c_sr(4, 0, 0, 5), DomainError);
  CHECK_THROWS_AS(build_c_sr(17, 0, 0, 1), CapacityError);
}

TEST_CASE("q_10 on eight sites: adjacent pairs with amplitude 1/sqrt(8)") {
  const auto q = build_q_sr(8, 1, 0);
  const auto& b = q.basis();
  int count = 0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    const Mask m = b.key(i);
    const bool adjacent = (m & (m << 1)) || m == ((Mask{1} << 7) | 1);
    if (adjacent) {
      ++count;
      CHECK(std::abs(q[i] - 1.0 / std::sqrt(8.0)) < 1e-15);
    } else {
      CHECK(q[i] == Complex{});
    }
  }
  CHECK(count == 8);
}

TEST_CASE("q_sr states below d/2 are orthonormal") {
  for (int d : {6, 8}) {
    std::vector<StateVector> states;
    for (int s = 1; s < d / 2; ++s)
      for (int r = 0; r < d; ++r) states.push_back(build_q_sr(d, s, r));
    for (std::size_t a = 0; a < states.size(); ++a) {
      CHECK(std::abs(states[a].norm() - 1.0) < 1e-12);
      for (std::size_t b = a + 1; b < states.size(); ++b)
        CHECK(std::abs(inner_product(states[a], states[b])) < 1e-12);
    }
  }
}

TEST_CASE("q at s = d/2 is renormalized and vanishes for odd r") {
  const auto q = build_q_sr(8, 4, 0);
  CHECK(std::abs(q.norm() - 1.0) < 1e-12);
  for (std::size_t i = 0; i < q.size(); ++i)
    if (q[i] != Complex{}) CHECK(std::abs(q[i] - 0.5) < 1e-15);  // four configs
  CHECK(std::abs(build_q_sr(8, 4, 2).norm() - 1.0) < 1e-12);
  CHECK_THROWS_AS(build_q_sr(8, 4, 1), DomainError);
  CHECK_THROWS_AS(build_q_sr(8, 0, 0), DomainError);
  CHECK_THROWS_AS(build_q_sr(7, 1, 0), DomainError);
  CHECK_THROWS_AS(build_q_sr(8, 5, 0), DomainError);
}

TEST_CASE("two-coboson state re-expanded on the q_s0 basis") {
  for (int d : {4, 6, 8, 10}) {
    const auto lhs = to_pair_sector(build_c_sr(d, 0, 0, 2));
    std::vector<std::pair<double, StateVector>> exact;
    std::vector<std::pair<double, StateVector>> asymptotic;
    for (int s = 1; s <= d / 2; ++s) {
      const auto q = build_q_sr(d, s, 0);
      exact.emplace_back(2 * s < d ? std::sqrt(2.0 / (d - 1)) : std::sqrt(1.0 / (d - 1)), q);
      asymptotic.emplace_back(std::sqrt(2.0 / d), q);
    }
    CHECK(distance(lhs, combine(exact)) < 1e-12);
    // the sqrt(2/d) prefactor is the large-d form of the same expansion
    const double gap = distance(lhs, combine(asymptotic));
    CAPTURE(d);
    CHECK(gap == doctest::Approx(std::sqrt((d / 2.0 - 1) * std::pow(std::sqrt(2.0 / (d - 1)) - std::sqrt(2.0 / d), 2) +
                                           std::pow(std::sqrt(2.0 / d) - std::sqrt(1.0 / (d - 1)), 2))));
  }
  double previous = 1.0;
  for (int d = 4; d <= 16; d += 2) {
    const auto lhs = to_pair_sector(build_c_sr(d, 0, 0, 2));
    std::vector<std::pair<double, StateVector>> asymptotic;
    for (int s = 1; s <= d / 2; ++s) asymptotic.emplace_back(std::sqrt(2.0 / d), build_q_sr(d, s, 0));
    const double gap = distance(lhs, combine(asymptotic));
    CHECK(gap < previous);
    previous = gap;
  }
}

TEST_CASE("blocks reduce to the bipartite and four-partite states") {
  const int d = 8;
  CHECK(distance(build_block(d, 1), to_pair_sector(build_c_sr(d, 0, 0, 1))) < 1e-12);
  CHECK(distance(build_block(d, 2), build_q_sr(d, 1, 0)) < 1e-12);
  const auto full = build_block(d, d);
  CHECK(full.size() == 1);
  CHECK(std::abs(full[0] - 1.0) < 1e-15);
  CHECK_THROWS_AS(build_block(d, 0), DomainError);
  CHECK_THROWS_AS(build_block(d, 9), DomainError);
}

TEST_CASE("partition |3+1> normalization from a configuration-first count") {
  for (int d : {6, 8, 10, 12}) {
    // amplitude of a configuration = (number of (block, site) decompositions) / d
    std::map<Mask, int> count;
    for (int k = 0; k < d; ++k) {
      const Mask block = (Mask{1} << k) | (Mask{1} << ((k + 1) % d)) | (Mask{1} << ((k + 2) % d));
      for (int l = 0; l < d; ++l)
        if (!(block >> l & 1)) ++count[block | (Mask{1} << l)];
    }
    double norm2 = 0.0;
    for (const auto& [mask, c] : count) norm2 += static_cast<double>(c * c) / (d * d);
    const auto ps = build_partition_state(d, Partition::parse("3+1"));
    CHECK(ps.norm_squared == doctest::Approx(1.0 / norm2).epsilon(1e-12));
    CHECK(ps.norm_squared == doctest::Approx(static_cast<double>(d) / (d - 1)).epsilon(1e-12));
    CHECK(std::abs(ps.state.norm() - 1.0) < 1e-12);
  }
}

TEST_CASE("|1+1> is the normalized two-coboson state and |N> is the block") {
  for (int d : {6, 8, 10}) {
    const auto two = build_partition_state(d, Partition::parse("1+1"));
    CHECK(distance(two.state, to_pair_sector(build_c_sr(d, 0, 0, 2))) < 1e-12);
    for (int n : {2, 3, 4}) {
      const auto single = build_partition_state(d, Partition({n}));
      CHECK(distance(single.state, build_block(d, n)) < 1e-12);
    }
  }
}

TEST_CASE("|1+...+1> is uniform over all configurations") {
  for (int n : {2, 3, 4}) {
    const auto ps = build_partition_state(10, Partition(std::vector<int>(static_cast<std::size_t>(n), 1)));
    const double expected = 1.0 / std::sqrt(static_cast<double>(ps.state.size()));
    for (std::size_t i = 0; i < ps.state.size(); ++i) CHECK(std::abs(ps.state[i] - expected) < 1e-12);
  }
}

TEST_CASE("partition states reject oversized partitions") {
  CHECK_THROWS_AS(build_partition_state(4, Partition::parse("3+2")), DomainError);
  const auto tight = build_partition_state(4, Partition::parse("2+2"));
  CHECK(tight.state.size() == 1);
  CHECK(std::abs(tight.state.norm() - 1.0) < 1e-12);
}

TEST_CASE("zero-momentum ansatz states are translation invariant") {
  const int d = 8;
  std::vector<StateVector> states{build_c_sr(d, 0, 0, 2), build_c_sr(d, 3, 0, 2), build_q_sr(d, 1, 0),
                                  build_q_sr(d, 3, 0),    build_q_sr(d, 4, 0),    build_block(d, 3)};
  for (const char* p : {"2+1", "3+1", "2+2", "1+1+1", "2+1+1"})
    states.push_back(build_partition_state(d, Partition::parse(p)).state);
  for (const auto& psi : states) {
    CHECK(std::abs(psi.norm() - 1.0) < 1e-12);
    for (int s = 1; s < d; ++s) CHECK(distance(translate(psi, s), psi) < 1e-12);
  }
}

TEST_CASE("phase convention: first nonzero amplitude is real positive") {
  for (const auto& psi : {build_c_sr(6, 1, 2, 2), build_q_sr(6, 2, 5), build_block(6, 2)}) {
    for (std::size_t i = 0; i < psi.size(); ++i)
      if (psi[i] != Complex{}) {
        CHECK(psi[i].real() > 0.0);
        CHECK(psi[i].imag() == 0.0);
        break;
      }
  }
}
