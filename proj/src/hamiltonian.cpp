#include "spinhier/hamiltonian.hpp"

#include <cmath>

#include "spinhier/errors.hpp"

namespace spinhier {
namespace {

constexpr double kHermitianTol = 1e-12;

CMatrix couple(const SpinTriple& t, const Coupling& c) {
  const std::size_t n = t.s.dimension() * t.s.dimension();
  CMatrix sum = CMatrix::zeros(n, n);
  for (std::size_t j = 0; j < 3; ++j) {
    for (std::size_t k = 0; k < 3; ++k) {
      if (c[j][k] == 0.0) continue;
      sum = sum + scale(c[j][k], kron(t[j], t[k]));
    }
  }
  return sum;
}

constexpr Coupling kIdentityCoupling{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
constexpr Coupling kCyclicCoupling{{{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}};

}  // namespace

std::string kind_label(const HamiltonianKind& kind) {
  if (std::holds_alternative<HeisenbergH>(kind)) return "H";
  if (std::holds_alternative<CyclicK>(kind)) return "K";
  return "bilinear";
}

Hamiltonian build_heisenberg(HalfInteger s) {
  return {HeisenbergH{}, s, couple(make_spin_triple(s), kIdentityCoupling),
          true};
}

Hamiltonian build_cyclic(HalfInteger s) {
  return {CyclicK{}, s, couple(make_spin_triple(s), kCyclicCoupling), true};
}

Hamiltonian build_bilinear(HalfInteger s, const Coupling& coeffs) {
  for (const auto& row : coeffs) {
    for (double c : row) {
      if (!std::isfinite(c)) {
        throw DomainError("build_bilinear: non-finite coupling coefficient");
      }
    }
  }
  CMatrix m = couple(make_spin_triple(s), coeffs);
  const double dim = static_cast<double>(m.rows());
  const bool hermitian = hermiticity_residual(m) <= kHermitianTol * dim;
  return {Bilinear{coeffs}, s, std::move(m), hermitian};
}

Hamiltonian build_hamiltonian(HalfInteger s, const HamiltonianKind& kind) {
  if (std::holds_alternative<HeisenbergH>(kind)) return build_heisenberg(s);
  if (std::holds_alternative<CyclicK>(kind)) return build_cyclic(s);
  return build_bilinear(s, std::get<Bilinear>(kind).coeffs);
}

CMatrix total_spin_squared(const SpinTriple& t) {
  const CMatrix id = CMatrix::identity(t.s.dimension());
  const std::size_t n = t.s.dimension() * t.s.dimension();
  CMatrix sum = CMatrix::zeros(n, n);
  for (std::size_t j = 0; j < 3; ++j) {
    const CMatrix total = kron(t[j], id) + kron(id, t[j]);
    sum = sum + total * total;
  }
  return sum;
}

CMatrix total_s3(const SpinTriple& t) {
  const CMatrix id = CMatrix::identity(t.s.dimension());
  return kron(t.s3, id) + kron(id, t.s3);
}

}  // namespace spinhier
