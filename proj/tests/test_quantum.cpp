#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "steercost/cmatrix.hpp"
#include "steercost/errors.hpp"
#include "steercost/quantum.hpp"
#include "steercost/steering.hpp"

using namespace steercost;

namespace {

CMatrix diag(std::initializer_list<double> d) {
  CMatrix m(d.size());
  std::size_t i = 0;
  for (double v : d) {
    m(i, i) = v;
    ++i;
  }
  return m;
}

CMatrix singlet_projector_by_hand() {
  CMatrix m(4);
  m(1, 1) = m(2, 2) = 0.5;
  m(1, 2) = m(2, 1) = -0.5;
  return m;
}

double eigen_residual(const CMatrix& m) {
  const auto e = eigh(m);
  CMatrix rebuilt(m.dim());
  for (std::size_t k = 0; k < m.dim(); ++k) rebuilt += e.values[k] * projector(e.vectors[k]);
  return max_abs_difference(rebuilt, m);
}

MeasurementSet random_projective(std::mt19937_64& rng) {
  return MeasurementSet::from_effects({oracle::random_qubit_projectors(rng), oracle::random_qubit_projectors(rng)},
                                      true);
}

}  // namespace

TEST_CASE("tensor product") {
  CHECK(max_abs_difference(tensor(CMatrix::identity(2), CMatrix::identity(2)), CMatrix::identity(4)) == 0.0);
  CHECK(max_abs_difference(tensor(pauli_z(), CMatrix::identity(2)), diag({1, 1, -1, -1})) == 0.0);
  CHECK_THROWS_AS(tensor(CMatrix::identity(4), CMatrix::identity(2)), DimensionMismatch);

  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    const CMatrix a = oracle::random_hermitian(rng, 2);
    const CMatrix b = oracle::random_hermitian(rng, 2);
    CHECK(max_abs_difference(tensor(a, b), oracle::kron(a, b)) < 1e-15);
    CHECK(std::abs(tensor(a, b).trace() - a.trace() * b.trace()) < 1e-12);
  }
}

TEST_CASE("partial traces") {
  std::mt19937_64 rng(2);
  const CMatrix ra = oracle::random_density(rng, 2);
  const CMatrix rb = oracle::random_density(rng, 2);
  CHECK(max_abs_difference(partial_trace_A(tensor(ra, rb)), rb) < 1e-14);
  CHECK(max_abs_difference(partial_trace_B(tensor(ra, rb)), ra) < 1e-14);
  CHECK(max_abs_difference(partial_trace_A(singlet_projector_by_hand()), 0.5 * CMatrix::identity(2)) < 1e-15);
  CHECK_THROWS_AS(partial_trace_A(CMatrix::identity(2)), DimensionMismatch);

  for (int trial = 0; trial < 50; ++trial) {
    const CMatrix m1 = oracle::random_matrix(rng, 4);
    const CMatrix m2 = oracle::random_matrix(rng, 4);
    const Complex s(0.3, -1.2);
    CHECK(max_abs_difference(partial_trace_A(m1 + s * m2), partial_trace_A(m1) + s * partial_trace_A(m2)) < 1e-12);
    CHECK(max_abs_difference(partial_trace_A(m1), oracle::trace_out_a(m1)) < 1e-14);
  }
}

TEST_CASE("Hermitian eigensolver") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = trial % 2 ? 4 : 2;
    const CMatrix h = oracle::random_hermitian(rng, d);
    CHECK(eigen_residual(h) <= 1e-10);
    const auto e = eigh(h);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        CHECK(std::abs(inner(e.vectors[i], e.vectors[j]) - (i == j ? 1.0 : 0.0)) < 1e-10);
  }
  // Degenerate spectrum.
  const auto w = eigh(werner_state(0.4).matrix());
  CHECK(w.values[0] == doctest::Approx(0.15));
  CHECK(w.values[3] == doctest::Approx(0.55));
}

TEST_CASE("state constructors") {
  CHECK(max_abs_difference(werner_state(0).matrix(), 0.25 * CMatrix::identity(4)) < 1e-15);
  CHECK(max_abs_difference(werner_state(1).matrix(), singlet_projector_by_hand()) < 1e-15);
  CHECK(max_abs_difference(projector(singlet()), singlet_projector_by_hand()) < 1e-15);
  CHECK_THROWS_AS(werner_state(1.2), OutOfRange);
  CHECK_THROWS_AS(colored_noise_state(-0.1), OutOfRange);

  for (double V : {0.0, 0.2, 0.5, 0.9, 1.0}) {
    const auto values = eigh(werner_state(V).matrix()).values;
    std::vector<double> expected = {(1 - V) / 4, (1 - V) / 4, (1 - V) / 4, (1 + 3 * V) / 4};
    std::vector<double> got(values.begin(), values.end());
    std::sort(got.begin(), got.end());
    std::sort(expected.begin(), expected.end());
    for (std::size_t i = 0; i < 4; ++i) CHECK(got[i] == doctest::Approx(expected[i]).epsilon(1e-12));
  }

  const CMatrix c0 = colored_noise_state(0).matrix();
  CHECK(max_abs_difference(c0, diag({0, 0.5, 0.5, 0})) < 1e-15);
  CHECK(max_abs_difference(colored_noise_state(1).matrix(), singlet_projector_by_hand()) < 1e-15);
  for (double V : {0.0, 0.3, 0.7, 1.0}) {
    CHECK(colored_noise_state(V).matrix().trace().real() == doctest::Approx(1.0));
    CHECK(eigen_residual(colored_noise_state(V).matrix()) <= 1e-10);
    CHECK(eigen_residual(werner_state(V).matrix()) <= 1e-10);
  }
}

TEST_CASE("state validation") {
  CHECK_THROWS_AS(State::from_matrix(CMatrix::identity(3)), DimensionMismatch);
  CHECK_THROWS_AS(State::from_matrix(CMatrix::identity(2)), InvalidOperator);  // trace 2
  CHECK_THROWS_AS(State::from_matrix(diag({1.5, -0.5})), InvalidOperator);
  CMatrix not_hermitian = 0.5 * CMatrix::identity(2);
  not_hermitian(0, 1) = 0.1;
  CHECK_THROWS_AS(State::from_matrix(not_hermitian), InvalidOperator);
  CHECK_NOTHROW(State::from_matrix(diag({1.0, 0.0})));
}

TEST_CASE("PPT test on Werner states") {
  CHECK_FALSE(ppt_entangled(werner_state(1.0 / 3 - 0.01)));
  CHECK(ppt_entangled(werner_state(1.0 / 3 + 0.01)));
  CHECK_FALSE(ppt_entangled(werner_state(0)));
  CHECK(ppt_entangled(werner_state(1)));
}

TEST_CASE("MUB pairs") {
  CHECK_NOTHROW(mub_pair_standard());
  for (double angle : {0.37, 1.1, -2.0}) {
    const MubPair p = mub_pair_rotated(angle);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) CHECK(std::norm(inner(p.f(i), p.g(j))) == doctest::Approx(0.5));
  }
  const MubPair s = mub_pair_standard();
  CHECK_THROWS_AS(MubPair::from_bases({s.f(0), s.f(1)}, {s.f(0), s.f(1)}), InvalidOperator);
  CHECK_THROWS_AS(MubPair::from_bases({s.f(0), s.f(0)}, {s.g(0), s.g(1)}), InvalidOperator);
}

TEST_CASE("measurement validation") {
  const CMatrix half = 0.5 * CMatrix::identity(2);
  CHECK_NOTHROW(MeasurementSet::from_effects({{half, half}}, false));
  CHECK_THROWS_AS(MeasurementSet::from_effects({{half, half}}, true), InvalidOperator);
  CHECK_THROWS_AS(MeasurementSet::from_effects({{half, 0.25 * CMatrix::identity(2)}}, false), InvalidOperator);
  CHECK_THROWS_AS(MeasurementSet::from_effects({{diag({1.5, 0.0}), diag({-0.5, 1.0})}}, false), InvalidOperator);
}

TEST_CASE("assemblages") {
  const auto alice = bb84_alice_measurements();
  const State mixed = State::from_matrix(0.25 * CMatrix::identity(4));
  const auto flat = assemblage_from(mixed, alice);
  for (int x = 0; x < 2; ++x)
    for (int a = 0; a < 2; ++a) CHECK(max_abs_difference(flat.sigma(a, x), 0.25 * CMatrix::identity(2)) < 1e-15);

  for (double V : {0.1, 0.5, 1.0}) {
    const auto w = assemblage_from(werner_state(V), alice);
    for (int x = 0; x < 2; ++x)
      for (int a = 0; a < 2; ++a) CHECK(w.sigma(a, x).trace().real() == doctest::Approx(0.5));
  }

  Assemblage::Elements broken = flat.elements();
  broken[0][0] = 0.5 * CMatrix::identity(2);
  broken[0][1] = CMatrix::zero(2);
  broken[1][0] = diag({0.5, 0.0});
  broken[1][1] = diag({0.5, 0.0});
  CHECK_THROWS_AS(Assemblage::from_elements(broken), SignalingDetected);
}

TEST_CASE("assemblage consistency and box agreement on random states") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const State rho = State::from_matrix(oracle::random_density(rng, 4));
    const auto alice = random_projective(rng);
    const auto bob = random_projective(rng);
    const auto a = assemblage_from(rho, alice);
    CHECK(max_abs_difference(a.sigma(0, 0) + a.sigma(1, 0), a.sigma(0, 1) + a.sigma(1, 1)) <= kQuantumTolerance);
    CHECK(a.reduced_state().trace().real() == doctest::Approx(1.0));

    const Box via = box_from(a, bob);
    const Box direct = joint_box(rho, alice, bob);
    CHECK(max_abs_difference(via, direct) <= kQuantumTolerance);
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y)
        for (int aa = 0; aa < 2; ++aa)
          for (int b = 0; b < 2; ++b) {
            const CMatrix op = oracle::kron(alice.effect(x, aa), bob.effect(y, b));
            CHECK(std::abs(direct(aa, b, x, y) - oracle::trace_of_product(op, rho.matrix()).real()) < 1e-12);
          }
  }
}

TEST_CASE("the BB84 measurements turn Werner states into the BB84 family") {
  const auto alice = bb84_alice_measurements();
  const auto bob = bob_measurements(mub_pair_standard());
  for (double V : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    const Box b = box_from(assemblage_from(werner_state(V), alice), bob);
    CHECK(oracle::max_diff(oracle::as_table(b), oracle::bb84(V)) <= 1e-12);
    const Box c = box_from(assemblage_from(colored_noise_state(V), alice), bob);
    CHECK(oracle::max_diff(oracle::as_table(c), oracle::colored(V)) <= 1e-12);
  }
  const Box s = box_from(assemblage_from(State::from_matrix(projector(singlet())), alice), bob);
  CHECK(max_abs_difference(s, bb84_box(1.0)) <= 1e-12);
  const Box n = box_from(assemblage_from(State::from_matrix(0.25 * CMatrix::identity(4)), alice), bob);
  CHECK(max_abs_difference(n, uniform_box()) <= 1e-15);
}
