#pragma once

#include <span>
#include <vector>

#include "spinhier/complex_matrix.hpp"

namespace spinhier {

struct EigOptions {
  // Sweeps stop once the off-diagonal Frobenius norm is <= tol * ||m||_F.
  double tol = 1e-12;
  int max_sweeps = 100;
};

/// Eigendecomposition m = V diag(values) V^dagger of a Hermitian matrix.
///
/// `values` ascend; column k of `vectors` belongs to values[k] and has its
/// largest-magnitude component real and positive (first such index on ties).
/// `residual` is max_k ||m v_k - values[k] v_k||.
struct EigDecomposition {
  std::vector<double> values;
  CMatrix vectors;
  double residual;
  int sweeps;
};

/// Cyclic complex Jacobi. Pivots are visited row-major over the strict upper
/// triangle; the result is a pure function of the input.
///
/// Throws HermiticityError when ||m - m^dagger||_F > tol * dim,
/// ConvergenceError when max_sweeps is exhausted, ShapeError if non-square.
EigDecomposition hermitian_eig(const CMatrix& m, const EigOptions& opts = {});
EigDecomposition hermitian_eig(const CMatrix& m, double tol);

/// ||m v^ - lambda v^|| with v^ = v / ||v||. Throws DomainError for a zero
/// vector and ShapeError on length mismatch.
double verify_eigenpair(const CMatrix& m, std::span<const Complex> v,
                        double lambda);

// Orthogonal projector onto span of the given columns of `vectors`.
CMatrix spectral_projector(const CMatrix& vectors,
                           std::span<const std::size_t> columns);

}  // namespace spinhier
