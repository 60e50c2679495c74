#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "spinhier/complex_matrix.hpp"
#include "spinhier/eigensolver.hpp"
#include "spinhier/spin.hpp"

namespace spinhier {

struct Cluster {
  double value;
  std::size_t multiplicity;
};

/// Eigenvalues grouped into (value, multiplicity) pairs, ascending.
/// Multiplicities sum to `dimension`; neighbouring values differ by more
/// than `cluster_tol`.
struct Spectrum {
  std::vector<Cluster> clusters;
  double cluster_tol;
  std::size_t dimension;

  // Same cluster count, values within max(cluster_tol, other.cluster_tol),
  // multiplicities exactly equal.
  bool matches(const Spectrum& other) const;
};

// 1e-9 * max(1, ||m||_F)
double default_cluster_tol(const CMatrix& m);

/// Greedy left-to-right clustering: a value joins the current cluster iff it
/// lies within cluster_tol of the cluster's running mean. Throws DomainError
/// for unsorted input, an empty list or a non-positive tolerance.
Spectrum cluster_spectrum(std::span<const double> values, double cluster_tol);

/// Spectrum of S(x)S summed over components for spin s, from the total-spin
/// decomposition: eigenvalue J(J+1)/2 - s(s+1) with multiplicity 2J+1 for
/// J = 0, 1, ..., 2s.
Spectrum closed_form_spectrum(HalfInteger s);

/// Re tr(m^k) for k = 1..kmax by iterated multiplication.
///
/// Throws HermiticityError if m deviates from Hermitian by more than
/// 1e-10 * dim, or if some tr(m^k) has an imaginary part above
/// 1e-8 * dim * max(1, ||m^k||_F).
std::vector<double> moments(const CMatrix& m, int kmax);

// Same as moments(m / scale, kmax); keeps high powers inside double range.
std::vector<double> scaled_moments(const CMatrix& m, int kmax, double scale);

/// True iff |sum_i (values_i/scale)^k - traces[k-1]| <= tol * dim for every
/// k <= traces.size(), where dim = values.size().
bool newton_check(std::span<const double> values, std::span<const double> traces,
                  double tol, double scale = 1.0);

/// Power traces of two matrices, compared in units of scale^k.
///
/// traces_x[i] holds tr((X/scale)^powers[i]); comparing these against
/// tol * dim is the same as comparing tr(X^k) against tol * dim * scale^k.
struct MomentReport {
  std::vector<int> powers;
  double scale;
  std::vector<double> traces_a;
  std::vector<double> traces_b;
  double max_abs_diff;
  double tol;
  double bound;  // tol * dim
  bool pass;
  // Leading powers 1..prefix_len reported on their own (0 = none).
  std::size_t prefix_len;
  bool prefix_pass;

  // tr(A^k) / tr(B^k) in natural units, or nullopt past double range.
  std::optional<double> raw_a(std::size_t index) const;
  std::optional<double> raw_b(std::size_t index) const;
};

struct IsospectralReport {
  std::vector<double> values_a;
  std::vector<double> values_b;
  Spectrum spectrum_a;
  Spectrum spectrum_b;
  MomentReport moments;
  bool spectra_equal;
  // newton_check of each eigenvalue list against its own moments.
  bool newton_a;
  bool newton_b;
};

struct CertifyOptions {
  int kmax = 0;  // 0: the full dimension
  double tol = 1e-8;
  std::size_t prefix = 0;
  EigOptions eig{};
  std::optional<double> cluster_tol{};  // default_cluster_tol per matrix
};

/// Two independent lines of evidence for equal spectra: direct
/// eigendecomposition + clustering (the verdict of record, spectra_equal),
/// and power-trace moments up to kmax (moments.pass).
///
/// Throws ShapeError on dimension mismatch; eigensolver errors propagate.
IsospectralReport certify_isospectral(const CMatrix& a, const CMatrix& b,
                                      const CertifyOptions& opts);
IsospectralReport certify_isospectral(const CMatrix& a, const CMatrix& b,
                                      int kmax, double tol);

}  // namespace spinhier
