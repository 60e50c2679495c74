#include "spinhier/spin.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "spinhier/errors.hpp"

namespace spinhier {
namespace {

bool all_digits(std::string_view s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

int parse_nonneg_int(std::string_view s, std::string_view whole) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (!all_digits(s) || ec != std::errc() || ptr != s.data() + s.size()) {
    throw DomainError("invalid spin '" + std::string(whole) +
                      "': expected n, n/2 or a decimal such as 1.5");
  }
  return v;
}

const char* kLabels[3] = {"S1", "S2", "S3"};

}  // namespace

HalfInteger::HalfInteger(int twice) : twice_(twice) {
  if (twice < 1 || twice > kMaxTwice) {
    throw DomainError("spin 2s = " + std::to_string(twice) +
                      " outside supported range [1, " +
                      std::to_string(kMaxTwice) + "]");
  }
}

HalfInteger HalfInteger::parse(std::string_view text) {
  // Components are capped well below int overflow before doubling.
  auto checked = [&](int twice) {
    if (twice > kMaxTwice) {
      throw DomainError("spin '" + std::string(text) + "' above the maximum " +
                        HalfInteger(kMaxTwice).to_string());
    }
    return HalfInteger(twice);
  };
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const int num = parse_nonneg_int(text.substr(0, slash), text);
    const int den = parse_nonneg_int(text.substr(slash + 1), text);
    if (den == 2) return checked(std::min(num, kMaxTwice + 1));
    if (den == 1) return checked(2 * std::min(num, kMaxTwice));
    throw DomainError("invalid spin '" + std::string(text) +
                      "': denominator must be 1 or 2");
  }
  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    const int whole = std::min(parse_nonneg_int(text.substr(0, dot), text), kMaxTwice);
    std::string_view frac = text.substr(dot + 1);
    if (!all_digits(frac)) parse_nonneg_int(frac, text);  // throws
    while (!frac.empty() && frac.back() == '0') frac.remove_suffix(1);
    if (frac.empty()) return checked(2 * whole);
    if (frac == "5") return checked(2 * whole + 1);
    throw DomainError("invalid spin '" + std::string(text) +
                      "': not a multiple of 1/2");
  }
  return checked(2 * std::min(parse_nonneg_int(text, text), kMaxTwice));
}

std::string HalfInteger::to_string() const {
  if (is_integer()) return std::to_string(twice_ / 2);
  return std::to_string(twice_) + "/2";
}

SpinTriple make_spin_triple(HalfInteger s) {
  const std::size_t n = s.dimension();
  const int two_s = s.twice();
  // Row k carries magnetic label m = s - k, i.e. 2m = 2s - 2k.
  std::vector<Complex> s1(n * n), s2(n * n), s3(n * n);
  for (std::size_t k = 0; k < n; ++k) {
    const int two_m = two_s - 2 * static_cast<int>(k);
    s3[k * n + k] = 0.5 * two_m;
    if (k == 0) continue;
    // <m+1| S+ |m> = sqrt(s(s+1) - m(m+1)), placed at (k-1, k).
    const double ladder =
        0.5 * std::sqrt(static_cast<double>(two_s * (two_s + 2) -
                                            two_m * (two_m + 2)));
    const std::size_t up = (k - 1) * n + k;
    const std::size_t down = k * n + (k - 1);
    // S1 = (S+ + S-)/2, S2 = (S+ - S-)/(2i)
    s1[up] = 0.5 * ladder;
    s1[down] = 0.5 * ladder;
    s2[up] = Complex(0.0, -0.5 * ladder);
    s2[down] = Complex(0.0, 0.5 * ladder);
  }
  return SpinTriple{s, CMatrix(n, n, std::move(s1)), CMatrix(n, n, std::move(s2)),
                    CMatrix(n, n, std::move(s3))};
}

double AlgebraReport::max_residual() const {
  double worst = 0.0;
  for (const auto& r : residuals) worst = std::max(worst, r.value);
  return worst;
}

double quadratic_trace(HalfInteger s) {
  return s.casimir() * static_cast<double>(s.dimension()) / 3.0;
}

double power_trace(const CMatrix& m, int n) {
  if (n < 1) throw DomainError("power_trace: exponent must be >= 1");
  CMatrix p = m;
  for (int k = 1; k < n; ++k) p = matmul(p, m);
  return trace(p).real();
}

AlgebraReport verify_su2(const SpinTriple& t, double tol) {
  if (!(tol > 0.0)) throw DomainError("verify_su2: tol must be positive");
  const std::size_t dim = t.s.dimension();
  const Complex i{0.0, 1.0};
  AlgebraReport report{t.s, tol, tol * static_cast<double>(dim), {}, true};
  auto& out = report.residuals;

  for (std::size_t j = 0; j < 3; ++j) {
    const std::size_t k = (j + 1) % 3;
    const std::size_t l = (j + 2) % 3;
    out.push_back({std::string("[") + kLabels[j] + "," + kLabels[k] + "]-i" +
                       kLabels[l],
                   frobenius_norm(commutator(t[j], t[k]) - i * t[l])});
  }

  const CMatrix casimir = t.s1 * t.s1 + t.s2 * t.s2 + t.s3 * t.s3;
  out.push_back({"S1^2+S2^2+S3^2-s(s+1)I",
                 frobenius_distance(casimir, scale(t.s.casimir(),
                                                   CMatrix::identity(dim)))});

  const double q = quadratic_trace(t.s);
  for (std::size_t j = 0; j < 3; ++j) {
    out.push_back({std::string("tr(") + kLabels[j] + "^2)-s(s+1)(2s+1)/3",
                   std::abs(trace(t[j] * t[j]) - q)});
  }
  for (std::size_t j = 0; j < 3; ++j) {
    for (std::size_t k = 0; k < 3; ++k) {
      if (j == k) continue;
      out.push_back({std::string("tr(") + kLabels[j] + kLabels[k] + ")",
                     std::abs(trace(t[j] * t[k]))});
    }
  }
  for (std::size_t j = 0; j < 3; ++j) {
    CMatrix p = t[j];
    const CMatrix sq = t[j] * t[j];
    for (int n = 1; n <= 7; n += 2) {
      out.push_back({std::string("tr(") + kLabels[j] + "^" + std::to_string(n) + ")",
                     std::abs(trace(p))});
      p = p * sq;
    }
  }

  double cross = 0.0;
  for (std::size_t j = 0; j < 3; ++j) {
    for (std::size_t k = 0; k < 3; ++k) {
      if (j == k) continue;
      const CMatrix left = t[j] * t[k];
      for (std::size_t l = 0; l < 3; ++l) {
        for (std::size_t m = 0; m < 3; ++m) {
          if (l == m) continue;
          cross = std::max(cross, std::abs(trace(kron(left, t[l] * t[m]))));
        }
      }
    }
  }
  out.push_back({"max tr((SjSk)(x)(SlSm)), j!=k, l!=m", cross});

  for (const auto& r : out) {
    if (!(r.value <= report.bound)) report.pass = false;
  }
  return report;
}

}  // namespace spinhier
