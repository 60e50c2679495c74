#include "spinhier/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spinhier/errors.hpp"

namespace spinhier {
namespace {

std::optional<double> unscale(double normalized, double scale, int power) {
  const double raw = normalized * std::pow(scale, power);
  if (!std::isfinite(raw)) return std::nullopt;
  return raw;
}

double spectral_radius(std::span<const double> values) {
  double r = 0.0;
  for (double v : values) r = std::max(r, std::abs(v));
  return r;
}

}  // namespace

bool Spectrum::matches(const Spectrum& other) const {
  if (dimension != other.dimension || clusters.size() != other.clusters.size()) {
    return false;
  }
  const double tol = std::max(cluster_tol, other.cluster_tol);
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    if (clusters[i].multiplicity != other.clusters[i].multiplicity) return false;
    if (!(std::abs(clusters[i].value - other.clusters[i].value) <= tol)) return false;
  }
  return true;
}

double default_cluster_tol(const CMatrix& m) {
  return 1e-9 * std::max(1.0, frobenius_norm(m));
}

Spectrum cluster_spectrum(std::span<const double> values, double cluster_tol) {
  if (!(cluster_tol > 0.0)) {
    throw DomainError("cluster_spectrum: cluster_tol must be positive");
  }
  if (values.empty()) throw DomainError("cluster_spectrum: no values");
  if (!std::is_sorted(values.begin(), values.end())) {
    throw DomainError("cluster_spectrum: values must be ascending");
  }
  Spectrum out{{}, cluster_tol, values.size()};
  double sum = 0.0;
  std::size_t count = 0;
  for (double v : values) {
    if (count > 0 && std::abs(v - sum / static_cast<double>(count)) > cluster_tol) {
      out.clusters.push_back({sum / static_cast<double>(count), count});
      sum = 0.0;
      count = 0;
    }
    sum += v;
    ++count;
  }
  out.clusters.push_back({sum / static_cast<double>(count), count});
  return out;
}

Spectrum closed_form_spectrum(HalfInteger s) {
  Spectrum out{{}, 0.0, s.dimension() * s.dimension()};
  double frob_sq = 0.0;
  for (int j = 0; j <= s.twice(); ++j) {
    const double value = 0.5 * j * (j + 1) - s.casimir();
    const auto mult = static_cast<std::size_t>(2 * j + 1);
    out.clusters.push_back({value, mult});
    frob_sq += static_cast<double>(mult) * value * value;
  }
  // Same tolerance the numerical path derives from ||H||_F.
  out.cluster_tol = 1e-9 * std::max(1.0, std::sqrt(frob_sq));
  return out;
}

std::vector<double> scaled_moments(const CMatrix& m, int kmax, double scale) {
  if (!m.is_square()) throw ShapeError("moments: matrix is not square");
  if (kmax < 1) throw DomainError("moments: kmax must be >= 1");
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw DomainError("moments: scale must be positive and finite");
  }
  const double dim = static_cast<double>(m.rows());
  if (hermiticity_residual(m) > 1e-10 * dim) {
    throw HermiticityError("moments: matrix is not Hermitian");
  }
  const CMatrix base = scale == 1.0 ? m : spinhier::scale(1.0 / scale, m);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(kmax));
  CMatrix power = base;
  for (int k = 1; k <= kmax; ++k) {
    if (k > 1) power = matmul(power, base);
    const Complex tr = trace(power);
    const double drift_bound = 1e-8 * dim * std::max(1.0, frobenius_norm(power));
    if (std::abs(tr.imag()) > drift_bound) {
      throw HermiticityError("moments: tr(m^" + std::to_string(k) +
                             ") has imaginary part " + std::to_string(tr.imag()));
    }
    out.push_back(tr.real());
  }
  return out;
}

std::vector<double> moments(const CMatrix& m, int kmax) {
  return scaled_moments(m, kmax, 1.0);
}

bool newton_check(std::span<const double> values, std::span<const double> traces,
                  double tol, double scale) {
  const double bound = tol * static_cast<double>(values.size());
  std::vector<double> powers(values.size(), 1.0);
  for (double expected : traces) {
    double sum = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
      powers[i] *= values[i] / scale;
      sum += powers[i];
    }
    if (!(std::abs(sum - expected) <= bound)) return false;
  }
  return true;
}

std::optional<double> MomentReport::raw_a(std::size_t index) const {
  return unscale(traces_a.at(index), scale, powers.at(index));
}

std::optional<double> MomentReport::raw_b(std::size_t index) const {
  return unscale(traces_b.at(index), scale, powers.at(index));
}

IsospectralReport certify_isospectral(const CMatrix& a, const CMatrix& b,
                                      int kmax, double tol) {
  CertifyOptions opts;
  opts.kmax = kmax;
  opts.tol = tol;
  return certify_isospectral(a, b, opts);
}

IsospectralReport certify_isospectral(const CMatrix& a, const CMatrix& b,
                                      const CertifyOptions& opts) {
  if (!a.is_square() || !b.is_square() || a.rows() != b.rows()) {
    throw ShapeError("certify_isospectral: matrices must be square and of equal dimension");
  }
  const std::size_t dim = a.rows();
  const int kmax = opts.kmax > 0 ? opts.kmax : static_cast<int>(dim);

  EigDecomposition eig_a = hermitian_eig(a, opts.eig);
  EigDecomposition eig_b = hermitian_eig(b, opts.eig);
  Spectrum spec_a = cluster_spectrum(
      eig_a.values, opts.cluster_tol.value_or(default_cluster_tol(a)));
  Spectrum spec_b = cluster_spectrum(
      eig_b.values, opts.cluster_tol.value_or(default_cluster_tol(b)));

  const double scale = std::max({1.0, spectral_radius(eig_a.values),
                                 spectral_radius(eig_b.values)});
  MomentReport mr;
  mr.scale = scale;
  mr.traces_a = scaled_moments(a, kmax, scale);
  mr.traces_b = scaled_moments(b, kmax, scale);
  mr.tol = opts.tol;
  mr.bound = opts.tol * static_cast<double>(dim);
  mr.prefix_len = std::min<std::size_t>(opts.prefix, static_cast<std::size_t>(kmax));
  mr.max_abs_diff = 0.0;
  double prefix_diff = 0.0;
  for (int k = 1; k <= kmax; ++k) {
    const auto i = static_cast<std::size_t>(k - 1);
    mr.powers.push_back(k);
    const double d = std::abs(mr.traces_a[i] - mr.traces_b[i]);
    mr.max_abs_diff = std::max(mr.max_abs_diff, d);
    if (i < mr.prefix_len) prefix_diff = std::max(prefix_diff, d);
  }
  mr.pass = mr.max_abs_diff <= mr.bound;
  mr.prefix_pass = prefix_diff <= mr.bound;

  IsospectralReport report{std::move(eig_a.values),
                           std::move(eig_b.values),
                           std::move(spec_a),
                           std::move(spec_b),
                           std::move(mr),
                           false,
                           false,
                           false};
  report.spectra_equal = report.spectrum_a.matches(report.spectrum_b);
  report.newton_a = newton_check(report.values_a, report.moments.traces_a,
                                 opts.tol, scale);
  report.newton_b = newton_check(report.values_b, report.moments.traces_b,
                                 opts.tol, scale);
  return report;
}

}  // namespace spinhier
