// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "contracts.hpp"
#include "json_schema_lite.hpp"
#include "oracles.hpp"
#include "spinhier/eigensolver.hpp"
#include "spinhier/gate.hpp"
#include "spinhier/hamiltonian.hpp"
#include "spinhier/spectral.hpp"
#include "spinhier/spin.hpp"

using namespace spinhier;
using namespace std::complex_literals;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

bool clusters_equal(const Spectrum& s, const std::vector<Cluster>& want, double tol) {
  if (s.clusters.size() != want.size()) return false;
  for (std::size_t i = 0; i < want.size(); ++i) {
    if (std::abs(s.clusters[i].value - want[i].value) > tol) return false;
    if (s.clusters[i].multiplicity != want[i].multiplicity) return false;
  }
  return true;
}

Spectrum computed_spectrum(const CMatrix& m) {
  return cluster_spectrum(hermitian_eig(m).values, default_cluster_tol(m));
}

void golden_matrices(Outcome& o) {
  const CMatrix h = 0.25 * CMatrix::from_rows({{1.0, 0.0, 0.0, 0.0},
                                                {0.0, -1.0, 2.0, 0.0},
                                                {0.0, 2.0, -1.0, 0.0},
                                                {0.0, 0.0, 0.0, 1.0}});
  const CMatrix k = 0.25 * CMatrix::from_rows({{0.0, 1.0, -1i, -1i},
                                                {1.0, 0.0, 1i, 1i},
                                                {1i, -1i, 0.0, -1.0},
                                                {1i, -1i, -1.0, 0.0}});
  double worst = 0.0;
  for (const auto& [built, want] : {std::pair{build_heisenberg(HalfInteger(1)).matrix, h},
                                    std::pair{build_cyclic(HalfInteger(1)).matrix, k}}) {
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) worst = std::max(worst, std::abs(built(i, j) - want(i, j)));
  }
  o.require(worst <= 1e-14, "entrywise difference");
  o.detail << "max entry difference " << worst;
}

void tabulated_spectra(Outcome& o) {
  const std::vector<std::pair<int, std::vector<Cluster>>> tables{
      {1, {{-0.75, 1}, {0.25, 3}}},
      {2, {{-2, 1}, {-1, 3}, {1, 5}}},
      {4, {{-6, 1}, {-5, 3}, {-3, 5}, {0, 7}, {4, 9}}},
  };
  for (const auto& [twice, want] : tables) {
    const HalfInteger s(twice);
    o.require(clusters_equal(computed_spectrum(build_heisenberg(s).matrix), want, 1e-9),
              "H spectrum at s=" + s.to_string());
    o.require(clusters_equal(computed_spectrum(build_cyclic(s).matrix), want, 1e-9),
              "K spectrum at s=" + s.to_string());
  }
  o.detail << "s = 1/2, 1, 2 for H and K";
}

void spin_three_halves(Outcome& o) {
  const HalfInteger s(3);
  const std::vector<Cluster> want{{-15.0 / 4, 1}, {-11.0 / 4, 3}, {-3.0 / 4, 5}, {9.0 / 4, 7}};
  const Spectrum h = computed_spectrum(build_heisenberg(s).matrix);
  const Spectrum k = computed_spectrum(build_cyclic(s).matrix);
  o.require(clusters_equal(h, want, 1e-9), "H spectrum");
  o.require(clusters_equal(k, want, 1e-9), "K spectrum");
  o.require(clusters_equal(closed_form_spectrum(s), want, 1e-12), "closed form");
  std::size_t total = 0;
  for (const auto& c : h.clusters) total += c.multiplicity;
  o.require(total == 16, "multiplicities sum to 16");
  o.detail << "multiplicities 1,3,5,7 (sum " << total
           << "); the printed 1x for 9/4 would sum to 10 and is not asserted";
}

void moment_identity(Outcome& o) {
  for (int twice = 1; twice <= 8; ++twice) {
    const HalfInteger s(twice);
    const std::size_t dim = s.dimension();
    CertifyOptions opts;
    opts.kmax = static_cast<int>(dim * dim);
    opts.prefix = dim;
    const auto r = certify_isospectral(build_heisenberg(s).matrix, build_cyclic(s).matrix, opts);
    o.require(r.moments.pass, "all powers at s=" + s.to_string());
    o.require(r.moments.prefix_pass && r.moments.prefix_len == dim, "prefix at s=" + s.to_string());
    if (twice == 8) {
      o.detail << "s=4: powers 1.." << opts.kmax << ", prefix 1.." << dim
               << ", max normalized diff " << r.moments.max_abs_diff << " vs bound "
               << r.moments.bound;
    }
  }
}

void algebra_suite(Outcome& o) {
  double worst_odd = 0.0;
  for (int twice = 1; twice <= 12; ++twice) {
    const SpinTriple t = make_spin_triple(HalfInteger(twice));
    const AlgebraReport rep = verify_su2(t, 1e-12);
    o.require(rep.pass, "su(2) residuals at 2s=" + std::to_string(twice));
    for (int j = 0; j < 3; ++j) {
      for (int n : {1, 3, 5, 7}) worst_odd = std::max(worst_odd, std::abs(power_trace(t[j], n)));
      o.require(std::abs(power_trace(t[j], 2) - quadratic_trace(t.s)) <= 1e-12 * t.s.dimension(),
                "n=2 trace formula");
    }
  }
  o.require(worst_odd <= 1e-10, "odd traces vanish");
  const SpinTriple t = make_spin_triple(HalfInteger(3));
  const double fourth = power_trace(t.s3, 4);
  const double formula = quadratic_trace(t.s);
  o.require(std::abs(fourth - 41.0 / 4) <= 1e-12, "tr(S3^4) = 41/4 at s=3/2");
  o.require(std::abs(fourth - formula) > 1.0, "even-power formula fails at n=4");
  o.detail << "max odd trace " << worst_odd << "; at s=3/2 tr(S3^4) = " << fourth
           << " vs formula " << formula;
}

void listed_eigenvectors(Outcome& o) {
  const double r = 1.0 / std::sqrt(2.0);
  const std::vector<CVector> hv{{0.0, r, -r, 0.0}, {1.0, 0.0, 0.0, 0.0}, {0.0, r, r, 0.0}, {0.0, 0.0, 0.0, 1.0}};
  const std::vector<CVector> kv{{0.5, -0.5, -0.5i, -0.5i}, {r, 0.0, 0.0, r * 1i}, {0.0, r, 0.0, -r * 1i}, {0.0, 0.0, r, -r}};
  const CMatrix h = build_heisenberg(HalfInteger(1)).matrix;
  const CMatrix k = build_cyclic(HalfInteger(1)).matrix;
  double worst = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    const double lambda = i == 0 ? -0.75 : 0.25;
    worst = std::max(worst, verify_eigenpair(h, hv[i], lambda));
    worst = std::max(worst, verify_eigenpair(k, kv[i], lambda));
  }
  o.require(worst <= 1e-10, "eigenpair residuals");
  o.detail << "8 vectors, max residual " << worst;
}

void newton_identity(Outcome& o) {
  int checked = 0;
  for (int twice = 1; twice <= 6; ++twice) {
    const HalfInteger s(twice);
    for (const auto& m : {build_heisenberg(s).matrix, build_cyclic(s).matrix}) {
      const auto e = hermitian_eig(m);
      double rho = 1.0;
      for (double v : e.values) rho = std::max(rho, std::abs(v));
      const int kmax = static_cast<int>(m.rows());
      o.require(newton_check(e.values, scaled_moments(m, kmax, rho), 1e-8, rho),
                "power sums at s=" + s.to_string());
      ++checked;
    }
  }
  o.detail << checked << " spectra, k up to the dimension";
}

void gate_properties(Outcome& o) {
  constexpr double kPi = std::numbers::pi;
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  double worst_unitary = 0.0, worst_group = 0.0, worst_taylor = 0.0;
  for (int twice = 1; twice <= 4; ++twice) {
    for (const auto& h : {build_heisenberg(HalfInteger(twice)), build_cyclic(HalfInteger(twice))}) {
      const double dim = static_cast<double>(h.matrix.rows());
      for (int trial = 0; trial < 4; ++trial) {
        const double a = angle(rng), b = angle(rng);
        const Gate ga = synthesize_gate(h, a);
        worst_unitary = std::max(worst_unitary, unitarity_residual(ga.matrix) / dim);
        const double group = frobenius_distance(ga.matrix * synthesize_gate(h, b).matrix,
                                                synthesize_gate(h, a + b).matrix);
        worst_group = std::max(worst_group, group / dim);
      }
      const double theta = 2.0 / frobenius_norm(h.matrix);
      for (double t : {theta, -0.5 * theta}) {
        worst_taylor = std::max(worst_taylor, frobenius_distance(synthesize_gate(h, t).matrix,
                                                                 oracle::taylor_exp(h.matrix, t)));
      }
    }
  }
  o.require(worst_unitary <= 1e-10, "unitarity");
  o.require(worst_group <= 1e-9, "group law");
  o.require(worst_taylor <= 1e-9, "series oracle");

  const Hamiltonian h = build_heisenberg(HalfInteger(1));
  const double swap = frobenius_distance(2.0 * h.matrix + 0.5 * CMatrix::identity(4), oracle::swap_matrix(2));
  o.require(swap <= 1e-12, "SWAP identity");
  const double fid = gate_fidelity(synthesize_gate(h, 2.0 * kPi).matrix,
                                   std::exp(Complex(0.0, -kPi / 2)) * CMatrix::identity(4));
  o.require(fid >= 1.0 - 1e-9, "U(2 pi) = e^{-i pi/2} I");
  o.detail << "unitarity/dim " << worst_unitary << ", group/dim " << worst_group << ", series "
           << worst_taylor << ", SWAP " << swap << ", fidelity " << fid;
}

void eigensolver_contract(Outcome& o) {
  int count = 0;
  for (int twice = 1; twice <= 8; ++twice) {
    for (const auto& h : {build_heisenberg(HalfInteger(twice)), build_cyclic(HalfInteger(twice))}) {
      o.require(contracts::within_contract(h.matrix, hermitian_eig(h.matrix)),
                "Hamiltonian at 2s=" + std::to_string(twice));
      ++count;
    }
  }
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const CMatrix m = oracle::random_hermitian(rng, 1 + rng() % 32);
    o.require(contracts::within_contract(m, hermitian_eig(m)), "random #" + std::to_string(trial));
    ++count;
  }
  o.detail << count << " matrices";
}

struct Captured {
  int code;
  std::string out;
};

Captured shell(const std::string& cmd) {
  Captured c{-1, {}};
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return c;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) c.out.append(buf.data(), n);
  const int status = pclose(pipe);
  c.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return c;
}

void cli_contract(Outcome& o) {
  const std::string tool = SPIN_TOOL_PATH;
  const Captured table = shell("'" + tool + "' table --max-spin 2 --format json 2>/dev/null");
  o.require(table.code == 0, "table exit code " + std::to_string(table.code));
  std::ifstream schema_file(SPINHIER_SCHEMA_PATH);
  const schema_lite::Validator validator(nlohmann::json::parse(schema_file));
  const auto doc = nlohmann::json::parse(table.out, nullptr, false);
  o.require(!doc.is_discarded(), "table output parses");
  if (!doc.is_discarded()) {
    const auto errors = validator.validate(doc);
    o.require(errors.empty(), errors.empty() ? "" : errors.front());
  }
  const std::string data = SPINHIER_TEST_DATA;
  const Captured syntax = shell("'" + tool + "' spectrum --hamiltonian file --matrix-file '" +
                                data + "/corrupt_syntax.txt' 2>/dev/null");
  const Captured herm = shell("'" + tool + "' spectrum --hamiltonian file --matrix-file '" +
                              data + "/corrupt_nonhermitian.txt' 2>/dev/null");
  o.require(syntax.code == 2, "syntax error exit " + std::to_string(syntax.code));
  o.require(herm.code == 3, "non-Hermitian exit " + std::to_string(herm.code));
  o.detail << "table exit " << table.code << ", schema valid; corrupted files exit "
           << syntax.code << " (syntax) and " << herm.code << " (non-Hermitian)";
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria{
      {"spin-1/2 golden matrices", golden_matrices},
      {"tabulated spectra for H and K", tabulated_spectra},
      {"spin-3/2 spectrum", spin_three_halves},
      {"moment identity for 2s <= 8", moment_identity},
      {"algebra suite for 2s <= 12", algebra_suite},
      {"listed spin-1/2 eigenvectors", listed_eigenvectors},
      {"power sums match traces for 2s <= 6", newton_identity},
      {"gate properties", gate_properties},
      {"eigensolver contract", eigensolver_contract},
      {"CLI table schema and exit codes", cli_contract},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "[exception: " << e.what() << "]";
    }
    failures += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first
              << " -- " << o.detail.str() << "\n";
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed\n";
  return failures == 0 ? 0 : 1;
}
