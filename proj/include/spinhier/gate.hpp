#pragma once

#include <vector>

#include "spinhier/complex_matrix.hpp"
#include "spinhier/eigensolver.hpp"
#include "spinhier/hamiltonian.hpp"

namespace spinhier {

/// U(theta) = exp(-i theta H) for a dimensionless angle theta.
///
/// `eigenvalues` are those of the source Hamiltonian; U's eigenphases are
/// -theta * eigenvalues (mod 2 pi). The global phase is kept as computed.
struct Gate {
  double theta;
  HamiltonianKind kind;
  HalfInteger s;
  CMatrix matrix;
  std::vector<double> eigenvalues;
};

/// Two-site state vector of unit norm (within 1e-10).
class StateVector {
 public:
  // Throws DomainError unless | ||amplitudes|| - 1 | <= 1e-10.
  explicit StateVector(CVector amplitudes);
  // Rescales a nonzero vector to unit norm.
  static StateVector normalized(CVector amplitudes);

  const CVector& amplitudes() const noexcept { return amplitudes_; }
  std::size_t dimension() const noexcept { return amplitudes_.size(); }

 private:
  CVector amplitudes_;
};

// Throws HermiticityError for a Bilinear source without its hermitian flag
// and DomainError for non-finite theta.
Gate synthesize_gate(const Hamiltonian& h, double theta,
                     const EigOptions& opts = {});

// Throws ShapeError on dimension mismatch.
StateVector apply_gate(const Gate& g, const StateVector& psi);

// |tr(a^dagger b)| / dim, in [0, 1]; 1 iff equal up to a global phase.
double gate_fidelity(const Gate& a, const Gate& b);
double gate_fidelity(const CMatrix& a, const CMatrix& b);

// ||U^dagger U - I||_F
double unitarity_residual(const CMatrix& u);

// -theta * lambda wrapped into (-pi, pi].
double wrap_phase(double phase);

}  // namespace spinhier
