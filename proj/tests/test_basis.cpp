#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "qet/basis.hpp"
#include "qet/hamiltonian.hpp"

using namespace qet;

namespace {

std::vector<oracle::Key> keys(const BasisIndex& b) {
  std::vector<oracle::Key> out;
  for (const auto& s : b.states()) out.push_back({s.m_l, s.m_r, s.n_ph});
  return out;
}

}  // namespace

TEST_CASE("small enumerations") {
  const BasisIndex b(1, 1, 1, 1);
  REQUIRE(b.size() == 4);
  CHECK(keys(b) == std::vector<oracle::Key>{{0, 0, 0}, {0, 0, 1}, {0, 1, 0}, {1, 0, 0}});

  CHECK(BasisIndex(2, 2, 2).size() == 27);
  CHECK_FALSE(BasisIndex(2, 2, 2).truncated());
}

TEST_CASE("block E=2 at N=4, cap 2") {
  const BasisIndex b(4, 4, 2, 2);
  const BlockRange r = b.block(2);
  REQUIRE(r.size == 6);
  std::vector<oracle::Key> got;
  for (std::size_t i = r.offset; i < r.offset + r.size; ++i)
    got.push_back({b.state(i).m_l, b.state(i).m_r, b.state(i).n_ph});
  const std::vector<oracle::Key> want = {{0, 0, 2}, {0, 1, 1}, {0, 2, 0},
                                         {1, 0, 1}, {1, 1, 0}, {2, 0, 0}};
  CHECK(got == want);
}

TEST_CASE("ordering and counts match brute-force enumeration") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> n(1, 6), cap(0, 4);
  for (int trial = 0; trial < 60; ++trial) {
    const int nl = n(rng), nr = n(rng), pc = cap(rng);
    const int full = nl + nr + pc;
    const int me = std::uniform_int_distribution<int>(0, full + 2)(rng);
    const BasisIndex b(nl, nr, pc, me);
    const auto want = oracle::enumerate(nl, nr, pc, std::min(me, full));
    CHECK(keys(b) == want);
    CHECK(BasisIndex::count_states(nl, nr, pc, me) == want.size());
    CHECK(b.max_total_excitation() == std::min(me, full));
  }
}

TEST_CASE("lookup is the inverse of enumeration") {
  const BasisIndex b(5, 3, 4);
  for (std::size_t i = 0; i < b.size(); ++i) CHECK(b.index_of(b.state(i)) == i);
  CHECK(b.index_of({0, 0, 0}) == 0);
  CHECK(b.index_of({5, 3, 4}) == b.size() - 1);
}

TEST_CASE("blocks are contiguous and ascending") {
  const BasisIndex b(4, 6, 3);
  std::size_t next = 0;
  for (int e = 0; e < b.num_blocks(); ++e) {
    const BlockRange r = b.block(e);
    CHECK(r.offset == next);
    for (std::size_t i = r.offset; i < r.offset + r.size; ++i) CHECK(b.state(i).total() == e);
    next += r.size;
  }
  CHECK(next == b.size());
}

TEST_CASE("out-of-range lookups name the coordinate") {
  const BasisIndex b(2, 3, 1, 3);
  CHECK_FALSE(b.find({3, 0, 0}).has_value());
  try {
    b.index_of({0, 4, 0});
    FAIL("expected out_of_range");
  } catch (const std::out_of_range& e) {
    CHECK(std::string(e.what()).find("m_r") != std::string::npos);
  }
  try {
    b.index_of({2, 2, 0});
    FAIL("expected out_of_range");
  } catch (const std::out_of_range& e) {
    CHECK(std::string(e.what()).find("total") != std::string::npos);
  }
}

TEST_CASE("invalid arguments and dimension cap") {
  CHECK_THROWS_AS(BasisIndex(0, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(BasisIndex(1, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(BasisIndex(1, 1, -1), std::invalid_argument);
  CHECK_THROWS_AS(BasisIndex(1, 1, 1, -1), std::invalid_argument);
  try {
    BasisIndex(99, 99, 99, std::nullopt, 1000);
    FAIL("expected DimensionError");
  } catch (const DimensionError& e) {
    CHECK(e.requested() == 100u * 100u * 100u);
    CHECK(e.cap() == 1000u);
  }
  CHECK_NOTHROW(BasisIndex(9, 9, 9, std::nullopt, 1000));
}

TEST_CASE("state vectors") {
  const BasisPtr b = build_basis(2, 2, 1);
  const StateVector g = product_state(b, 0, 0, 0);
  CHECK(g.amplitudes()[0] == cplx(1.0));
  CHECK(g.norm() == 1.0);
  const StateVector e = product_state(b, 1, 0, 0);
  CHECK(e.amplitude({1, 0, 0}) == cplx(1.0));
  CHECK(e.amplitude({7, 0, 0}) == cplx(0.0));
  CHECK(e.inner(g) == cplx(0.0));
  CHECK(e.support_block() == 1);

  StateVector z(b);
  CHECK_THROWS_AS(z.normalize(), DomainError);

  std::mt19937_64 rng(3);
  StateVector r(b, oracle::random_vector(rng, static_cast<Eigen::Index>(b->size())));
  r.normalize();
  CHECK(std::abs(r.norm() - 1.0) < 1e-10);
  CHECK_FALSE(r.support_block().has_value());
  CHECK(r.support_blocks().size() == static_cast<std::size_t>(b->num_blocks()));

  const BasisPtr other = build_basis(2, 2, 1);
  CHECK_THROWS(g.inner(StateVector(other)));
}

TEST_CASE("full spin basis: single ensemble of two atoms") {
  const FullSpinBasis fb(2, 0, 0);
  CHECK(fb.size() == 4);
  const Vector sym = fb.embed(Excitation{1, 0, 0});
  const double h = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(sym[fb.index(0b01, 0)] - h) < 1e-15);
  CHECK(std::abs(sym[fb.index(0b10, 0)] - h) < 1e-15);
  CHECK(std::abs(sym.norm() - 1.0) < 1e-15);

  // k = 1: atom 0 carries phase 1, atom 1 carries exp(i pi) = -1.
  const Vector k1 = fb.fourier_excitation(Side::left, 1);
  CHECK(std::abs(k1[fb.index(0b01, 0)] - h) < 1e-15);
  CHECK(std::abs(k1[fb.index(0b10, 0)] + h) < 1e-15);
  CHECK(std::abs(fb.fourier_excitation(Side::left, 0).dot(k1)) < 1e-15);
}

TEST_CASE("full spin basis size cap") {
  CHECK_THROWS_AS(FullSpinBasis(7, 6, 0), DimensionError);
  CHECK_NOTHROW(FullSpinBasis(6, 6, 0));
}

TEST_CASE("property: Fourier modes are orthonormal") {
  for (int n = 1; n <= 6; ++n) {
    const FullSpinBasis fb(n, 1, 0);
    for (int k = 0; k < n; ++k)
      for (int q = 0; q < n; ++q) {
        const cplx o = fb.fourier_excitation(Side::left, k).dot(fb.fourier_excitation(Side::left, q));
        CHECK(std::abs(o - (k == q ? 1.0 : 0.0)) < 1e-12);
      }
  }
}

TEST_CASE("property: symmetric embedding is an isometry") {
  std::mt19937_64 rng(11);
  for (auto [nl, nr, cap] : {std::array{1, 1, 1}, {2, 3, 2}, {4, 4, 1}, {5, 2, 0}, {6, 6, 1}}) {
    const FullSpinBasis fb(nl, nr, cap);
    const BasisPtr b = build_basis(nl, nr, cap);
    for (const auto& s : b->states()) CHECK(std::abs(fb.embed(s).norm() - 1.0) < 1e-12);
    StateVector psi(b, oracle::random_vector(rng, static_cast<Eigen::Index>(b->size())));
    psi.normalize();
    CHECK(std::abs(fb.embed(psi).norm() - 1.0) < 1e-12);
  }
}

TEST_CASE("property: the Hamiltonian never leaves a block") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    ModelParams p;
    p.n_l = 1 + trial % 5;
    p.n_r = 1 + (trial * 3) % 4;
    p.photon_cap = trial % 3;
    p.epsilon = u(rng);
    p.omega_ph = u(rng);
    p.g_l = u(rng);
    p.g_r = u(rng);
    p.include_stark = trial % 2 == 1;
    p.stark = {u(rng), u(rng), u(rng)};
    p.picture = trial % 4 < 2 ? Picture::full : Picture::interaction;
    const BasisPtr b = build_basis(p.n_l, p.n_r, p.photon_cap);
    const HamiltonianMatrix h = build_full_hamiltonian(p, build_collective_ops(b));
    for (int e = 0; e < b->num_blocks(); ++e) {
      const BlockRange r = b->block(e);
      Vector v = Vector::Zero(static_cast<Eigen::Index>(b->size()));
      v.segment(static_cast<Eigen::Index>(r.offset), static_cast<Eigen::Index>(r.size)) =
          oracle::random_vector(rng, static_cast<Eigen::Index>(r.size));
      const Vector hv = h.matrix * v;
      Vector outside = hv;
      outside.segment(static_cast<Eigen::Index>(r.offset), static_cast<Eigen::Index>(r.size)).setZero();
      CHECK(outside.norm() == 0.0);
    }
  }
}
