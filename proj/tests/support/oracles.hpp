#pragma once

// Independent reference computations for tests. Nothing here calls the
// library's arithmetic (matmul, kron, kernels, eigensolver); inputs and
// outputs cross the boundary only as CMatrix values.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "spinhier/complex_matrix.hpp"

namespace oracle {

using C = std::complex<double>;
using Dense = std::vector<std::vector<C>>;

inline Dense to_dense(const spinhier::CMatrix& m) {
  Dense d(m.rows(), std::vector<C>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) d[i][j] = m(i, j);
  return d;
}

inline spinhier::CMatrix from_dense(const Dense& d) {
  std::vector<C> e;
  for (const auto& row : d) e.insert(e.end(), row.begin(), row.end());
  return spinhier::CMatrix(d.size(), d.empty() ? 0 : d[0].size(), std::move(e));
}

inline Dense identity(std::size_t n) {
  Dense d(n, std::vector<C>(n));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 1.0;
  return d;
}

inline Dense mul(const Dense& a, const Dense& b) {
  Dense c(a.size(), std::vector<C>(b[0].size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b[0].size(); ++j) {
      C sum = 0.0;
      for (std::size_t k = 0; k < b.size(); ++k) sum += a[i][k] * b[k][j];
      c[i][j] = sum;
    }
  return c;
}

inline Dense kron(const Dense& a, const Dense& b) {
  const std::size_t br = b.size(), bc = b[0].size();
  Dense out(a.size() * br, std::vector<C>(a[0].size() * bc));
  for (std::size_t r = 0; r < out.size(); ++r)
    for (std::size_t c = 0; c < out[0].size(); ++c)
      out[r][c] = a[r / br][c / bc] * b[r % br][c % bc];
  return out;
}

inline C trace(const Dense& a) {
  C t = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) t += a[i][i];
  return t;
}

inline double max_abs_diff(const Dense& a, const Dense& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[0].size(); ++j)
      worst = std::max(worst, std::abs(a[i][j] - b[i][j]));
  return worst;
}

// tr(m^k), k = 1..kmax, by direct dense powers.
inline std::vector<double> brute_moments(const spinhier::CMatrix& m, int kmax) {
  const Dense base = to_dense(m);
  Dense p = base;
  std::vector<double> out;
  for (int k = 1; k <= kmax; ++k) {
    if (k > 1) p = mul(p, base);
    out.push_back(trace(p).real());
  }
  return out;
}

// exp(-i theta h) by its power series; intended for ||theta h|| <= 2 or so.
inline spinhier::CMatrix taylor_exp(const spinhier::CMatrix& h, double theta) {
  const std::size_t n = h.rows();
  Dense x = to_dense(h);
  for (auto& row : x)
    for (auto& z : row) z *= C(0.0, -theta);
  Dense sum = identity(n);
  Dense term = identity(n);
  for (int k = 1; k < 200; ++k) {
    term = mul(term, x);
    double size = 0.0;
    for (auto& row : term)
      for (auto& z : row) {
        z /= static_cast<double>(k);
        size = std::max(size, std::abs(z));
      }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) sum[i][j] += term[i][j];
    if (size < 1e-20) break;
  }
  return from_dense(sum);
}

// SWAP on C^d (x) C^d: |i, j> -> |j, i>.
inline spinhier::CMatrix swap_matrix(std::size_t d) {
  Dense s(d * d, std::vector<C>(d * d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) s[j * d + i][i * d + j] = 1.0;
  return from_dense(s);
}

inline spinhier::CMatrix random_matrix(std::mt19937_64& rng, std::size_t r,
                                       std::size_t c) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<C> e(r * c);
  for (auto& z : e) z = C(u(rng), u(rng));
  return spinhier::CMatrix(r, c, std::move(e));
}

inline spinhier::CMatrix random_hermitian(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Dense d(n, std::vector<C>(n));
  for (std::size_t i = 0; i < n; ++i) {
    d[i][i] = u(rng);
    for (std::size_t j = i + 1; j < n; ++j) {
      d[i][j] = C(u(rng), u(rng));
      d[j][i] = std::conj(d[i][j]);
    }
  }
  return from_dense(d);
}

}  // namespace oracle
