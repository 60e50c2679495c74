#pragma once

// Inner-loop kernels on contiguous complex<double> arrays.
//
// Every kernel exists as a portable scalar reference and, on x86-64, as an
// AVX2/FMA variant compiled in its own translation unit. The variant is
// chosen once per process from CPUID; SPINHIER_KERNELS=scalar in the
// environment forces the reference path. Variants agree to rounding, not
// bit-for-bit (FMA contracts differently), so tests compare them with a
// tolerance.

#include <complex>
#include <cstddef>
#include <string_view>

namespace spinhier::kernels {

using Complex = std::complex<double>;

struct KernelTable {
  std::string_view name;

  // y[i] += alpha * x[i]
  void (*axpy)(std::size_t n, Complex alpha, const Complex* x, Complex* y);
  // out[i] = alpha * x[i]
  void (*scaled_copy)(std::size_t n, Complex alpha, const Complex* x,
                      Complex* out);
  // sum x[i] * y[i]
  Complex (*dotu)(std::size_t n, const Complex* x, const Complex* y);
  // sum conj(x[i]) * y[i]
  Complex (*dotc)(std::size_t n, const Complex* x, const Complex* y);
  // sum |x[i] - y[i]|^2
  double (*sqdist)(std::size_t n, const Complex* x, const Complex* y);
  // Plane rotation of two rows, used by the Jacobi sweep:
  //   x' = c*x - sp*y
  //   y' = conj(sp)*x + c*y
  void (*rotate_rows)(std::size_t n, Complex* x, Complex* y, double c,
                      Complex sp);
};

const KernelTable& scalar_kernels() noexcept;

// nullptr when the AVX2 variant was not compiled in or the CPU lacks
// AVX2/FMA.
const KernelTable* avx2_kernels() noexcept;

// The table every library routine uses.
const KernelTable& active() noexcept;

}  // namespace spinhier::kernels
