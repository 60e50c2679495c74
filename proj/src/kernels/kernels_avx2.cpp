// AVX2/FMA kernel variants.
//
// This translation unit is compiled with -mavx2 -mfma and is only entered
// after the dispatcher has confirmed CPU support. It deliberately avoids
// instantiating any inline library templates (std::complex arithmetic,
// algorithms): the linker could otherwise keep the AVX2-compiled copy of a
// shared inline symbol and run it on a CPU without AVX2. Complex values are
// handled as interleaved (re, im) double pairs.

#include "spinhier/kernels.hpp"

#if defined(SPINHIER_HAVE_AVX2)

#include <immintrin.h>

namespace spinhier::kernels {
namespace {

inline const double* re_im(const Complex* p) {
  return reinterpret_cast<const double*>(p);
}
inline double* re_im(Complex* p) { return reinterpret_cast<double*>(p); }

// (ar + i ai) * v for the two complex numbers packed in v.
inline __m256d cmul_scalar(__m256d ar, __m256d ai, __m256d v) {
  const __m256d swapped = _mm256_permute_pd(v, 0b0101);
  return _mm256_fmaddsub_pd(ar, v, _mm256_mul_pd(ai, swapped));
}

inline void tail_cmul_add(double ar, double ai, const double* x, double* y) {
  y[0] += ar * x[0] - ai * x[1];
  y[1] += ar * x[1] + ai * x[0];
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// Sums the packed (re, im, re, im) accumulator into one complex value.
inline void hsum_complex(__m256d v, double* out) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  _mm_storeu_pd(out, _mm_add_pd(lo, hi));
}

void axpy(std::size_t n, Complex alpha, const Complex* xc, Complex* yc) {
  const double* a = re_im(&alpha);
  const double* x = re_im(xc);
  double* y = re_im(yc);
  const __m256d ar = _mm256_set1_pd(a[0]);
  const __m256d ai = _mm256_set1_pd(a[1]);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(x + 2 * i);
    const __m256d yv = _mm256_loadu_pd(y + 2 * i);
    _mm256_storeu_pd(y + 2 * i, _mm256_add_pd(yv, cmul_scalar(ar, ai, xv)));
  }
  if (i < n) tail_cmul_add(a[0], a[1], x + 2 * i, y + 2 * i);
}

void scaled_copy(std::size_t n, Complex alpha, const Complex* xc,
                 Complex* outc) {
  const double* a = re_im(&alpha);
  const double* x = re_im(xc);
  double* out = re_im(outc);
  const __m256d ar = _mm256_set1_pd(a[0]);
  const __m256d ai = _mm256_set1_pd(a[1]);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(x + 2 * i);
    _mm256_storeu_pd(out + 2 * i, cmul_scalar(ar, ai, xv));
  }
  if (i < n) {
    out[2 * i] = a[0] * x[2 * i] - a[1] * x[2 * i + 1];
    out[2 * i + 1] = a[0] * x[2 * i + 1] + a[1] * x[2 * i];
  }
}

Complex dotu(std::size_t n, const Complex* xc, const Complex* yc) {
  const double* x = re_im(xc);
  const double* y = re_im(yc);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(x + 2 * i);
    const __m256d yv = _mm256_loadu_pd(y + 2 * i);
    const __m256d xr = _mm256_movedup_pd(xv);
    const __m256d xi = _mm256_permute_pd(xv, 0b1111);
    const __m256d ys = _mm256_permute_pd(yv, 0b0101);
    acc = _mm256_add_pd(acc, _mm256_fmaddsub_pd(xr, yv, _mm256_mul_pd(xi, ys)));
  }
  double out[2];
  hsum_complex(acc, out);
  if (i < n) {
    out[0] += x[2 * i] * y[2 * i] - x[2 * i + 1] * y[2 * i + 1];
    out[1] += x[2 * i] * y[2 * i + 1] + x[2 * i + 1] * y[2 * i];
  }
  return Complex{out[0], out[1]};
}

Complex dotc(std::size_t n, const Complex* xc, const Complex* yc) {
  const double* x = re_im(xc);
  const double* y = re_im(yc);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(x + 2 * i);
    const __m256d yv = _mm256_loadu_pd(y + 2 * i);
    const __m256d xr = _mm256_movedup_pd(xv);
    const __m256d xi = _mm256_permute_pd(xv, 0b1111);
    const __m256d ys = _mm256_permute_pd(yv, 0b0101);
    // even lanes: xr*yr + xi*yi, odd lanes: xr*yi - xi*yr
    acc = _mm256_add_pd(acc, _mm256_fmsubadd_pd(xr, yv, _mm256_mul_pd(xi, ys)));
  }
  double out[2];
  hsum_complex(acc, out);
  if (i < n) {
    out[0] += x[2 * i] * y[2 * i] + x[2 * i + 1] * y[2 * i + 1];
    out[1] += x[2 * i] * y[2 * i + 1] - x[2 * i + 1] * y[2 * i];
  }
  return Complex{out[0], out[1]};
}

double sqdist(std::size_t n, const Complex* xc, const Complex* yc) {
  const double* x = re_im(xc);
  const double* y = re_im(yc);
  const std::size_t len = 2 * n;
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) {
    const __m256d d =
        _mm256_sub_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
    acc = _mm256_fmadd_pd(d, d, acc);
  }
  double total = hsum(acc);
  for (; i < len; ++i) {
    const double d = x[i] - y[i];
    total += d * d;
  }
  return total;
}

void rotate_rows(std::size_t n, Complex* xc, Complex* yc, double c,
                 Complex sp) {
  const double* s = re_im(&sp);
  double* x = re_im(xc);
  double* y = re_im(yc);
  const __m256d cv = _mm256_set1_pd(c);
  const __m256d sr = _mm256_set1_pd(s[0]);
  const __m256d si = _mm256_set1_pd(s[1]);
  const __m256d neg_si = _mm256_set1_pd(-s[1]);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(x + 2 * i);
    const __m256d yv = _mm256_loadu_pd(y + 2 * i);
    const __m256d sp_y = cmul_scalar(sr, si, yv);
    const __m256d spc_x = cmul_scalar(sr, neg_si, xv);
    _mm256_storeu_pd(x + 2 * i, _mm256_fmsub_pd(cv, xv, sp_y));
    _mm256_storeu_pd(y + 2 * i, _mm256_fmadd_pd(cv, yv, spc_x));
  }
  if (i < n) {
    const double xr = x[2 * i], xi = x[2 * i + 1];
    const double yr = y[2 * i], yi = y[2 * i + 1];
    x[2 * i] = c * xr - (s[0] * yr - s[1] * yi);
    x[2 * i + 1] = c * xi - (s[0] * yi + s[1] * yr);
    y[2 * i] = c * yr + (s[0] * xr + s[1] * xi);
    y[2 * i + 1] = c * yi + (s[0] * xi - s[1] * xr);
  }
}

}  // namespace

const KernelTable& avx2_kernel_table() noexcept {
  static const KernelTable table{"avx2", axpy,   scaled_copy, dotu,
                                 dotc,   sqdist, rotate_rows};
  return table;
}

}  // namespace spinhier::kernels

#endif  // SPINHIER_HAVE_AVX2
