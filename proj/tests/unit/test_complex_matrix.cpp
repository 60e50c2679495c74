#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "oracles.hpp"
#include "spinhier/complex_matrix.hpp"
#include "spinhier/errors.hpp"
#include "spinhier/spin.hpp"

using namespace spinhier;
using namespace std::complex_literals;

TEST_CASE("matmul examples") {
  const CMatrix m = CMatrix::from_rows({{1.0 + 2i, -3.0}, {0.5, 4i}});
  CHECK(matmul(CMatrix::identity(2), m) == m);
  const double d12[] = {1, 2};
  const double d34[] = {3, 4};
  const double d38[] = {3, 8};
  CHECK(matmul(CMatrix::diagonal(d12), CMatrix::diagonal(d34)) == CMatrix::diagonal(d38));
  const CMatrix sx = CMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});
  const CMatrix sy = CMatrix::from_rows({{0.0, -1i}, {1i, 0.0}});
  CHECK(frobenius_distance(matmul(sx, sy), CMatrix::from_rows({{1i, 0.0}, {0.0, -1i}})) == 0.0);
  CHECK_THROWS_AS(matmul(sx, CMatrix::identity(3)), ShapeError);
}

TEST_CASE("kron examples") {
  const CMatrix m = CMatrix::from_rows({{1.0, 2i}, {-1i, 3.0}});
  const CMatrix block = kron(CMatrix::identity(2), m);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      const Complex want = (i / 2 == j / 2) ? m(i % 2, j % 2) : 0.0;
      CHECK(block(i, j) == want);
    }
  const SpinTriple t = make_spin_triple(HalfInteger(1));
  const CMatrix k12 = kron(t.s1, t.s2);
  CHECK(std::abs(k12(0, 3) - (-0.25i)) <= 1e-15);
}

TEST_CASE("kron agrees with the index formula on random shapes") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = oracle::random_matrix(rng, 1 + rng() % 3, 1 + rng() % 3);
    const auto b = oracle::random_matrix(rng, 1 + rng() % 4, 1 + rng() % 4);
    const auto want = oracle::kron(oracle::to_dense(a), oracle::to_dense(b));
    // one rounded product per entry; FMA kernels may round differently
    CHECK(oracle::max_abs_diff(oracle::to_dense(kron(a, b)), want) <= 4e-16);
  }
}

TEST_CASE("adjoint, trace and frobenius examples") {
  const CMatrix sy = CMatrix::from_rows({{0.0, -1i}, {1i, 0.0}});
  CHECK(adjoint(CMatrix::identity(3)) == CMatrix::identity(3));
  CHECK(adjoint(sy) == sy);
  CHECK(trace(CMatrix::identity(4)) == Complex(4.0));
  CHECK(std::abs(trace(make_spin_triple(HalfInteger(2)).s3)) == 0.0);
  const double d[] = {2, -5};
  CHECK(trace(CMatrix::diagonal(d)) == Complex(-3.0));
  CHECK_THROWS_AS(trace(CMatrix::zeros(2, 3)), ShapeError);
  CHECK(frobenius_distance(sy, sy) == 0.0);
  CHECK(frobenius_distance(CMatrix::identity(2), CMatrix::zeros(2, 2)) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  const double e1[] = {1, 0}, e2[] = {0, 1};
  CHECK(frobenius_distance(CMatrix::diagonal(e1), CMatrix::diagonal(e2)) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK_THROWS_AS(frobenius_distance(sy, CMatrix::identity(3)), ShapeError);
}

TEST_CASE("construction rejects bad shapes and non-finite entries") {
  CHECK_THROWS_AS(CMatrix(0, 2, {}), ShapeError);
  CHECK_THROWS_AS(CMatrix(2, 2, {1.0, 2.0, 3.0}), ShapeError);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(CMatrix(1, 1, {Complex(nan, 0.0)}), NonFiniteError);
  CHECK_THROWS_AS(CMatrix(1, 1, {Complex(0.0, INFINITY)}), NonFiniteError);
  const double big[] = {1e308};
  CHECK_THROWS_AS(scale(10.0, CMatrix::diagonal(big)), NonFiniteError);
}

TEST_CASE("property: algebraic identities on random inputs") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + trial % 2;
    const auto a = oracle::random_matrix(rng, n, n);
    const auto b = oracle::random_matrix(rng, n, n);
    const auto c = oracle::random_matrix(rng, n, n);
    const auto d = oracle::random_matrix(rng, n, n);
    const double dim = static_cast<double>(n * n);
    CHECK(frobenius_distance(kron(a, b) * kron(c, d), kron(a * c, b * d)) <= 1e-12 * dim);
    CHECK(std::abs(trace(kron(a, b)) - trace(a) * trace(b)) <= 1e-12);
    CHECK(frobenius_distance(adjoint(a * b), adjoint(b) * adjoint(a)) <= 1e-12);
    CHECK(std::abs(trace(a * b) - trace(b * a)) <= 1e-12);
    CHECK(adjoint(adjoint(a)) == a);
    CHECK(oracle::max_abs_diff(oracle::to_dense(a * b),
                               oracle::mul(oracle::to_dense(a), oracle::to_dense(b))) <= 1e-14);
  }
}

TEST_CASE("matvec, commutator and hermiticity residual") {
  const CMatrix a = CMatrix::from_rows({{1.0, 1i}, {2.0, 0.0}});
  const CVector v{1.0, 1i};
  const CVector w = matvec(a, v);
  CHECK(w[0] == Complex(0.0));
  CHECK(w[1] == Complex(2.0));
  CHECK_THROWS_AS(matvec(a, CVector{1.0}), ShapeError);
  CHECK(commutator(a, a) == CMatrix::zeros(2, 2));
  // a - a^dagger = [[0, 1i - 2], [2 + 1i, 0]]
  CHECK(hermiticity_residual(a) == doctest::Approx(std::sqrt(10.0)));
  CHECK(vector_norm(v) == doctest::Approx(std::sqrt(2.0)));
}
