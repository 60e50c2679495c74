#pragma once

#include <array>
#include <string>
#include <variant>

#include "spinhier/complex_matrix.hpp"
#include "spinhier/spin.hpp"

namespace spinhier {

using Coupling = std::array<std::array<double, 3>, 3>;

// S1(x)S1 + S2(x)S2 + S3(x)S3
struct HeisenbergH {
  friend bool operator==(const HeisenbergH&, const HeisenbergH&) = default;
};
// S1(x)S2 + S2(x)S3 + S3(x)S1
struct CyclicK {
  friend bool operator==(const CyclicK&, const CyclicK&) = default;
};
// sum_jk coeffs[j][k] Sj(x)Sk
struct Bilinear {
  Coupling coeffs;
  friend bool operator==(const Bilinear&, const Bilinear&) = default;
};

using HamiltonianKind = std::variant<HeisenbergH, CyclicK, Bilinear>;

// "H", "K" or "bilinear"
std::string kind_label(const HamiltonianKind& kind);

/// A dimensionless two-site Hamiltonian on C^(2s+1) (x) C^(2s+1).
///
/// The left kron factor acts on the first site. `hermitian` is always true
/// for the two named kinds and is computed for Bilinear couplings.
struct Hamiltonian {
  HamiltonianKind kind;
  HalfInteger s;
  CMatrix matrix;
  bool hermitian;
};

Hamiltonian build_heisenberg(HalfInteger s);
Hamiltonian build_cyclic(HalfInteger s);
// Throws DomainError on non-finite coefficients.
Hamiltonian build_bilinear(HalfInteger s, const Coupling& coeffs);

// Dispatches on kind; Bilinear uses its stored coefficients.
Hamiltonian build_hamiltonian(HalfInteger s, const HamiltonianKind& kind);

// Sum_j (Sj(x)I + I(x)Sj)^2, the squared total spin of the two sites.
CMatrix total_spin_squared(const SpinTriple& t);
// S3(x)I + I(x)S3
CMatrix total_s3(const SpinTriple& t);

}  // namespace spinhier
