#include "spinhier/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "spinhier/errors.hpp"
#include "spinhier/kernels.hpp"

namespace spinhier {
namespace {

double off_diagonal_norm(const std::vector<Complex>& a, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) sum += std::norm(a[i * n + j]);
    }
  }
  return std::sqrt(sum);
}

// Zeroes a[p][q] with a unitary similarity J^H A J and accumulates J^H into
// the rows of w. Rows are rotated with the SIMD kernel; columns of the
// Hermitian iterate are then restored by mirroring.
void rotate(std::vector<Complex>& a, std::vector<Complex>& w, std::size_t n,
            std::size_t p, std::size_t q, const kernels::KernelTable& k) {
  const Complex apq = a[p * n + q];
  const double mag = std::abs(apq);
  if (mag == 0.0) return;
  const double app = a[p * n + p].real();
  const double aqq = a[q * n + q].real();

  const double theta = (aqq - app) / (2.0 * mag);
  double t;
  if (std::abs(theta) > 1e150) {
    t = 0.5 / theta;
  } else {
    t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    if (theta < 0.0) t = -t;
  }
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const Complex sp = s * (apq / mag);

  k.rotate_rows(n, &a[p * n], &a[q * n], c, sp);
  a[p * n + p] = app - t * mag;
  a[q * n + q] = aqq + t * mag;
  a[p * n + q] = 0.0;
  a[q * n + p] = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    if (r == p || r == q) continue;
    a[r * n + p] = std::conj(a[p * n + r]);
    a[r * n + q] = std::conj(a[q * n + r]);
  }
  k.rotate_rows(n, &w[p * n], &w[q * n], c, sp);
}

}  // namespace

EigDecomposition hermitian_eig(const CMatrix& m, double tol) {
  EigOptions opts;
  opts.tol = tol;
  return hermitian_eig(m, opts);
}

EigDecomposition hermitian_eig(const CMatrix& m, const EigOptions& opts) {
  if (!m.is_square()) throw ShapeError("hermitian_eig: matrix is not square");
  if (!(opts.tol > 0.0) || opts.max_sweeps < 1) {
    throw DomainError("hermitian_eig: tol must be positive and max_sweeps >= 1");
  }
  const std::size_t n = m.rows();
  const double dim = static_cast<double>(n);
  const double herm = hermiticity_residual(m);
  if (herm > opts.tol * dim) {
    throw HermiticityError("hermitian_eig: ||m - m^dagger|| = " +
                           std::to_string(herm) + " exceeds tolerance");
  }

  // Iterate on the exactly Hermitian part.
  std::vector<Complex> a(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      a[i * n + j] = 0.5 * (m(i, j) + std::conj(m(j, i)));
    }
  }
  // w accumulates V^dagger; row k is the conjugate of eigenvector k.
  std::vector<Complex> w(n * n);
  for (std::size_t i = 0; i < n; ++i) w[i * n + i] = 1.0;

  const auto& k = kernels::active();
  const double target = opts.tol * frobenius_norm(m);
  int sweeps = 0;
  while (off_diagonal_norm(a, n) > target) {
    if (sweeps == opts.max_sweeps) {
      throw ConvergenceError("hermitian_eig: no convergence after " +
                             std::to_string(sweeps) + " sweeps");
    }
    ++sweeps;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) rotate(a, w, n, p, q, k);
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a[x * n + x].real() < a[y * n + y].real();
  });

  std::vector<double> values(n);
  std::vector<Complex> vec(n * n);
  for (std::size_t col = 0; col < n; ++col) {
    const std::size_t src = order[col];
    values[col] = a[src * n + src].real();
    const Complex* row = &w[src * n];
    double biggest = 0.0;
    for (std::size_t i = 0; i < n; ++i) biggest = std::max(biggest, std::abs(row[i]));
    std::size_t lead = 0;
    while (std::abs(row[lead]) < biggest * (1.0 - 1e-9)) ++lead;
    // column entry i is conj(row[i]); rotate so entry `lead` is real positive
    const Complex phase = row[lead] / std::abs(row[lead]);
    for (std::size_t i = 0; i < n; ++i) vec[i * n + col] = std::conj(row[i]) * phase;
  }
  CMatrix vectors(n, n, std::move(vec));

  const CMatrix mv = matmul(m, vectors);
  double residual = 0.0;
  for (std::size_t col = 0; col < n; ++col) {
    double sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      sq += std::norm(mv(i, col) - values[col] * vectors(i, col));
    }
    residual = std::max(residual, std::sqrt(sq));
  }
  return {std::move(values), std::move(vectors), residual, sweeps};
}

double verify_eigenpair(const CMatrix& m, std::span<const Complex> v,
                        double lambda) {
  if (v.size() != m.cols()) {
    throw ShapeError("verify_eigenpair: vector length does not match matrix");
  }
  const double norm = vector_norm(v);
  if (norm == 0.0) throw DomainError("verify_eigenpair: zero vector");
  const CVector mv = matvec(m, v);
  double sq = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    sq += std::norm((mv[i] - lambda * v[i]) / norm);
  }
  return std::sqrt(sq);
}

CMatrix spectral_projector(const CMatrix& vectors,
                           std::span<const std::size_t> columns) {
  const std::size_t n = vectors.rows();
  std::vector<Complex> p(n * n);
  for (std::size_t c : columns) {
    if (c >= vectors.cols()) throw ShapeError("spectral_projector: column out of range");
    for (std::size_t i = 0; i < n; ++i) {
      const Complex vi = vectors(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        p[i * n + j] += vi * std::conj(vectors(j, c));
      }
    }
  }
  return CMatrix(n, n, std::move(p));
}

}  // namespace spinhier
