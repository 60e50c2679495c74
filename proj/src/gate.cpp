#include "spinhier/gate.hpp"

#include <cmath>
#include <numbers>

#include "spinhier/errors.hpp"

namespace spinhier {

StateVector::StateVector(CVector amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.empty()) throw DomainError("StateVector: empty");
  for (const Complex& z : amplitudes_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw NonFiniteError("StateVector: non-finite amplitude");
    }
  }
  if (std::abs(vector_norm(amplitudes_) - 1.0) > 1e-10) {
    throw DomainError("StateVector: amplitudes are not unit norm");
  }
}

StateVector StateVector::normalized(CVector amplitudes) {
  const double norm = vector_norm(amplitudes);
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw DomainError("StateVector::normalized: zero or non-finite vector");
  }
  for (Complex& z : amplitudes) z /= norm;
  return StateVector(std::move(amplitudes));
}

Gate synthesize_gate(const Hamiltonian& h, double theta, const EigOptions& opts) {
  if (!std::isfinite(theta)) throw DomainError("synthesize_gate: theta must be finite");
  if (!h.hermitian) {
    throw HermiticityError("synthesize_gate: source Hamiltonian is not Hermitian");
  }
  const EigDecomposition eig = hermitian_eig(h.matrix, opts);
  const std::size_t n = h.matrix.rows();
  const CMatrix& v = eig.vectors;

  // U = V diag(exp(-i theta lambda)) V^dagger
  std::vector<Complex> phases(n);
  for (std::size_t k = 0; k < n; ++k) phases[k] = std::polar(1.0, -theta * eig.values[k]);
  std::vector<Complex> vd(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) vd[i * n + k] = v(i, k) * phases[k];
  }
  CMatrix u = matmul(CMatrix(n, n, std::move(vd)), adjoint(v));
  return Gate{theta, h.kind, h.s, std::move(u), eig.values};
}

StateVector apply_gate(const Gate& g, const StateVector& psi) {
  if (psi.dimension() != g.matrix.cols()) {
    throw ShapeError("apply_gate: state dimension does not match gate");
  }
  // The StateVector constructor enforces norm preservation.
  return StateVector(matvec(g.matrix, psi.amplitudes()));
}

double gate_fidelity(const CMatrix& a, const CMatrix& b) {
  if (!a.is_square() || a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeError("gate_fidelity: gates differ in dimension");
  }
  const double dim = static_cast<double>(a.rows());
  return std::min(1.0, std::abs(trace(matmul(adjoint(a), b))) / dim);
}

double gate_fidelity(const Gate& a, const Gate& b) {
  return gate_fidelity(a.matrix, b.matrix);
}

double unitarity_residual(const CMatrix& u) {
  return frobenius_distance(matmul(adjoint(u), u), CMatrix::identity(u.rows()));
}

double wrap_phase(double phase) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::remainder(phase, two_pi);  // [-pi, pi]
  if (r <= -std::numbers::pi) r += two_pi;
  return r;
}

}  // namespace spinhier
