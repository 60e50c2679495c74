#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "spinhier/complex_matrix.hpp"

namespace spinhier {

/// Exact spin label s, stored as the integer 2s.
///
/// Valid labels satisfy 1 <= 2s <= kMaxTwice; spin 0 is excluded.
class HalfInteger {
 public:
  static constexpr int kMaxTwice = 24;

  // Throws DomainError outside [1, kMaxTwice].
  explicit HalfInteger(int twice);

  // Accepts "n", "n/2", "n/1" and decimal forms such as "1.5" or "2.0".
  static HalfInteger parse(std::string_view text);

  int twice() const noexcept { return twice_; }
  std::size_t dimension() const noexcept {
    return static_cast<std::size_t>(twice_) + 1;
  }
  double value() const noexcept { return 0.5 * twice_; }
  // s(s+1)
  double casimir() const noexcept { return 0.25 * twice_ * (twice_ + 2); }
  bool is_integer() const noexcept { return twice_ % 2 == 0; }

  // "1/2", "1", "3/2", ...
  std::string to_string() const;

  friend auto operator<=>(const HalfInteger&, const HalfInteger&) = default;

 private:
  int twice_;
};

/// The spin matrices S1, S2, S3 for one spin label, in the Condon-Shortley
/// basis with S3 = diag(s, s-1, ..., -s).
struct SpinTriple {
  HalfInteger s;
  CMatrix s1;
  CMatrix s2;
  CMatrix s3;

  const CMatrix& operator[](std::size_t j) const {
    return j == 0 ? s1 : (j == 1 ? s2 : s3);
  }
};

SpinTriple make_spin_triple(HalfInteger s);

struct Residual {
  std::string name;
  double value;
};

/// Residuals of the su(2) relations and trace identities for a triple.
struct AlgebraReport {
  HalfInteger s;
  double tol;
  double bound;  // tol * dim
  std::vector<Residual> residuals;
  bool pass;

  double max_residual() const;
};

// Checks: the three commutation relations, the Casimir identity,
// tr(Sj^2) = s(s+1)(2s+1)/3, tr(Sj Sk) = 0 for j != k, tr(Sj^n) = 0 for odd
// n in {1,3,5,7}, and tr((Sj Sk) (x) (Sl Sm)) = 0 for j != k, l != m.
// pass iff every residual <= tol * dim.
AlgebraReport verify_su2(const SpinTriple& t, double tol);

// s(s+1)(2s+1)/3; equals tr(Sj^2) for every j.
double quadratic_trace(HalfInteger s);

// Re tr(m^n) by repeated multiplication.
double power_trace(const CMatrix& m, int n);

}  // namespace spinhier
