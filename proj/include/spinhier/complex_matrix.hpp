#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace spinhier {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

/// Dense complex matrix with value semantics.
///
/// Entries are stored row-major: element (i, j) lives at index i*cols + j.
/// Both dimensions are positive and every entry is finite; the constructor
/// throws ShapeError / NonFiniteError otherwise, so no public operation can
/// hand back a NaN or Inf. Instances are immutable once built.
class CMatrix {
 public:
  CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

  static CMatrix zeros(std::size_t rows, std::size_t cols);
  static CMatrix identity(std::size_t n);
  static CMatrix diagonal(std::span<const Complex> diag);
  static CMatrix diagonal(std::span<const double> diag);
  static CMatrix from_rows(
      std::initializer_list<std::initializer_list<Complex>> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  const Complex& operator()(std::size_t i, std::size_t j) const noexcept {
    return data_[i * cols_ + j];
  }
  std::span<const Complex> entries() const noexcept { return data_; }
  std::span<const Complex> row(std::size_t i) const noexcept {
    return std::span<const Complex>(data_).subspan(i * cols_, cols_);
  }
  CVector column(std::size_t j) const;

  friend bool operator==(const CMatrix&, const CMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Complex> data_;
};

CMatrix matmul(const CMatrix& a, const CMatrix& b);
CMatrix kron(const CMatrix& a, const CMatrix& b);
CMatrix adjoint(const CMatrix& a);
Complex trace(const CMatrix& a);
double frobenius_distance(const CMatrix& a, const CMatrix& b);
double frobenius_norm(const CMatrix& a);

CMatrix add(const CMatrix& a, const CMatrix& b);
CMatrix subtract(const CMatrix& a, const CMatrix& b);
CMatrix scale(Complex alpha, const CMatrix& a);
// [a, b] = ab - ba
CMatrix commutator(const CMatrix& a, const CMatrix& b);
// ||a - a^dagger||_F
double hermiticity_residual(const CMatrix& a);

CVector matvec(const CMatrix& a, std::span<const Complex> v);
double vector_norm(std::span<const Complex> v);

inline CMatrix operator+(const CMatrix& a, const CMatrix& b) { return add(a, b); }
inline CMatrix operator-(const CMatrix& a, const CMatrix& b) {
  return subtract(a, b);
}
inline CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  return matmul(a, b);
}
inline CMatrix operator*(Complex alpha, const CMatrix& a) {
  return scale(alpha, a);
}

}  // namespace spinhier
