#include "spinhier/complex_matrix.hpp"

#include <cmath>
#include <string>

#include "spinhier/errors.hpp"
#include "spinhier/kernels.hpp"

namespace spinhier {
namespace {

std::string dims(const CMatrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void require_same_shape(const CMatrix& a, const CMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeError(std::string(op) + ": shape mismatch " + dims(a) + " vs " +
                     dims(b));
  }
}

}  // namespace

CMatrix::CMatrix(std::size_t rows, std::size_t cols,
                 std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (rows_ == 0 || cols_ == 0) {
    throw ShapeError("CMatrix: dimensions must be positive");
  }
  if (data_.size() != rows_ * cols_) {
    throw ShapeError("CMatrix: " + std::to_string(data_.size()) +
                     " entries for a " + std::to_string(rows_) + "x" +
                     std::to_string(cols_) + " matrix");
  }
  for (const Complex& z : data_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw NonFiniteError("CMatrix: non-finite entry");
    }
  }
}

CMatrix CMatrix::zeros(std::size_t rows, std::size_t cols) {
  return CMatrix(rows, cols, std::vector<Complex>(rows * cols));
}

CMatrix CMatrix::identity(std::size_t n) {
  std::vector<Complex> e(n * n);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1.0;
  return CMatrix(n, n, std::move(e));
}

CMatrix CMatrix::diagonal(std::span<const Complex> diag) {
  const std::size_t n = diag.size();
  std::vector<Complex> e(n * n);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = diag[i];
  return CMatrix(n, n, std::move(e));
}

CMatrix CMatrix::diagonal(std::span<const double> diag) {
  const std::size_t n = diag.size();
  std::vector<Complex> e(n * n);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = diag[i];
  return CMatrix(n, n, std::move(e));
}

CMatrix CMatrix::from_rows(
    std::initializer_list<std::initializer_list<Complex>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  std::vector<Complex> e;
  e.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw ShapeError("CMatrix::from_rows: ragged rows");
    e.insert(e.end(), row.begin(), row.end());
  }
  return CMatrix(r, c, std::move(e));
}

CVector CMatrix::column(std::size_t j) const {
  CVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

CMatrix matmul(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) {
    throw ShapeError("matmul: inner dimensions differ, " + dims(a) + " * " +
                     dims(b));
  }
  const auto& k = kernels::active();
  const std::size_t n = b.cols();
  std::vector<Complex> c(a.rows() * n);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Complex* out = c.data() + i * n;
    for (std::size_t p = 0; p < a.cols(); ++p) {
      const Complex aip = a(i, p);
      if (aip == Complex{}) continue;
      k.axpy(n, aip, b.row(p).data(), out);
    }
  }
  return CMatrix(a.rows(), n, std::move(c));
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  const auto& k = kernels::active();
  const std::size_t rows = a.rows() * b.rows();
  const std::size_t cols = a.cols() * b.cols();
  std::vector<Complex> out(rows * cols);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      for (std::size_t r = 0; r < b.rows(); ++r) {
        Complex* dst = out.data() + (i * b.rows() + r) * cols + j * b.cols();
        k.scaled_copy(b.cols(), aij, b.row(r).data(), dst);
      }
    }
  }
  return CMatrix(rows, cols, std::move(out));
}

CMatrix adjoint(const CMatrix& a) {
  std::vector<Complex> out(a.rows() * a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      out[j * a.rows() + i] = std::conj(a(i, j));
    }
  }
  return CMatrix(a.cols(), a.rows(), std::move(out));
}

Complex trace(const CMatrix& a) {
  if (!a.is_square()) throw ShapeError("trace: non-square " + dims(a));
  Complex sum{};
  for (std::size_t i = 0; i < a.rows(); ++i) sum += a(i, i);
  if (!std::isfinite(sum.real()) || !std::isfinite(sum.imag())) {
    throw NonFiniteError("trace: overflow");
  }
  return sum;
}

double frobenius_distance(const CMatrix& a, const CMatrix& b) {
  require_same_shape(a, b, "frobenius_distance");
  return std::sqrt(kernels::active().sqdist(a.entries().size(),
                                            a.entries().data(),
                                            b.entries().data()));
}

double frobenius_norm(const CMatrix& a) {
  const auto e = a.entries();
  double sum = 0.0;
  for (const Complex& z : e) sum += std::norm(z);
  return std::sqrt(sum);
}

CMatrix add(const CMatrix& a, const CMatrix& b) {
  require_same_shape(a, b, "add");
  std::vector<Complex> out(a.entries().begin(), a.entries().end());
  kernels::active().axpy(out.size(), 1.0, b.entries().data(), out.data());
  return CMatrix(a.rows(), a.cols(), std::move(out));
}

CMatrix subtract(const CMatrix& a, const CMatrix& b) {
  require_same_shape(a, b, "subtract");
  std::vector<Complex> out(a.entries().begin(), a.entries().end());
  kernels::active().axpy(out.size(), -1.0, b.entries().data(), out.data());
  return CMatrix(a.rows(), a.cols(), std::move(out));
}

CMatrix scale(Complex alpha, const CMatrix& a) {
  std::vector<Complex> out(a.entries().size());
  kernels::active().scaled_copy(out.size(), alpha, a.entries().data(),
                                out.data());
  return CMatrix(a.rows(), a.cols(), std::move(out));
}

CMatrix commutator(const CMatrix& a, const CMatrix& b) {
  return subtract(matmul(a, b), matmul(b, a));
}

double hermiticity_residual(const CMatrix& a) {
  if (!a.is_square()) {
    throw ShapeError("hermiticity_residual: non-square " + dims(a));
  }
  return frobenius_distance(a, adjoint(a));
}

CVector matvec(const CMatrix& a, std::span<const Complex> v) {
  if (v.size() != a.cols()) {
    throw ShapeError("matvec: vector of length " + std::to_string(v.size()) +
                     " against " + dims(a));
  }
  const auto& k = kernels::active();
  CVector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    out[i] = k.dotu(a.cols(), a.row(i).data(), v.data());
    if (!std::isfinite(out[i].real()) || !std::isfinite(out[i].imag())) {
      throw NonFiniteError("matvec: non-finite result");
    }
  }
  return out;
}

double vector_norm(std::span<const Complex> v) {
  double sum = 0.0;
  for (const Complex& z : v) sum += std::norm(z);
  return std::sqrt(sum);
}

}  // namespace spinhier
