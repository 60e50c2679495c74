#include "spinhier/kernels.hpp"

#include <complex>

namespace spinhier::kernels {
namespace {

// Explicit real arithmetic: std::complex operator* carries NaN-recovery
// branches (C Annex G) that we do not want in the reference path.
inline Complex mul(Complex a, Complex b) {
  return {a.real() * b.real() - a.imag() * b.imag(),
          a.real() * b.imag() + a.imag() * b.real()};
}

void axpy(std::size_t n, Complex alpha, const Complex* x, Complex* y) {
  for (std::size_t i = 0; i < n; ++i) y[i] += mul(alpha, x[i]);
}

void scaled_copy(std::size_t n, Complex alpha, const Complex* x, Complex* out) {
  for (std::size_t i = 0; i < n; ++i) out[i] = mul(alpha, x[i]);
}

Complex dotu(std::size_t n, const Complex* x, const Complex* y) {
  Complex acc{0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) acc += mul(x[i], y[i]);
  return acc;
}

Complex dotc(std::size_t n, const Complex* x, const Complex* y) {
  Complex acc{0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) acc += mul(std::conj(x[i]), y[i]);
  return acc;
}

double sqdist(std::size_t n, const Complex* x, const Complex* y) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dr = x[i].real() - y[i].real();
    const double di = x[i].imag() - y[i].imag();
    acc += dr * dr + di * di;
  }
  return acc;
}

void rotate_rows(std::size_t n, Complex* x, Complex* y, double c, Complex sp) {
  const Complex spc = std::conj(sp);
  for (std::size_t i = 0; i < n; ++i) {
    const Complex xi = x[i];
    const Complex yi = y[i];
    x[i] = c * xi - mul(sp, yi);
    y[i] = mul(spc, xi) + c * yi;
  }
}

}  // namespace

const KernelTable& scalar_kernels() noexcept {
  static const KernelTable table{"scalar", axpy,   scaled_copy, dotu,
                                 dotc,     sqdist, rotate_rows};
  return table;
}

}  // namespace spinhier::kernels
