#include "spinhier/cli/commands.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <json.hpp>
#include <numeric>
#include <optional>
#include <string>

#include "spinhier/cli/matrix_file.hpp"
#include "spinhier/eigensolver.hpp"
#include "spinhier/errors.hpp"
#include "spinhier/gate.hpp"
#include "spinhier/hamiltonian.hpp"
#include "spinhier/spectral.hpp"
#include "spinhier/spin.hpp"

namespace spinhier::cli {
namespace {

using Json = nlohmann::ordered_json;

constexpr double kDefaultTol = 1e-8;
constexpr double kAlgebraTol = 1e-12;
constexpr double kUnitarityLimit = 1e-8;

// ---------------------------------------------------------------------------
// number formatting

double clean(double v) { return v == 0.0 ? 0.0 : v; }

// Shortest round-trip decimal, the same digits a JSON reader recovers.
std::string num(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, clean(v));
  return std::string(buf, r.ptr);
}

std::string num_or_null(const Json& j) {
  return j.is_null() ? "null" : num(j.get<double>());
}

// Eigenvalues here are multiples of 1/4; label them exactly when they are.
Json quarter_label(double v) {
  const double q = std::round(4.0 * v);
  if (std::abs(4.0 * v - q) > 1e-7 || std::abs(q) > 1e15) return nullptr;
  long long n = std::llround(q);
  long long d = 4;
  const long long g = std::gcd(n < 0 ? -n : n, d);
  n /= g;
  d /= g;
  return d == 1 ? std::to_string(n) : std::to_string(n) + "/" + std::to_string(d);
}

std::string label_or_value(const Json& cluster) {
  const Json& exact = cluster["exact"];
  return exact.is_null() ? num(cluster["value"].get<double>())
                         : exact.get<std::string>();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string yes_no(const Json& b) { return b.get<bool>() ? "yes" : "no"; }
std::string pass_fail(const Json& b) { return b.get<bool>() ? "pass" : "FAIL"; }
std::string bool_text(const Json& b) { return b.get<bool>() ? "true" : "false"; }

// ---------------------------------------------------------------------------
// report construction

Json clusters_json(const Spectrum& s) {
  Json arr = Json::array();
  for (const Cluster& c : s.clusters) {
    arr.push_back({{"value", clean(c.value)},
                   {"multiplicity", c.multiplicity},
                   {"exact", quarter_label(c.value)}});
  }
  return arr;
}

Json spin_json(std::optional<HalfInteger> s) {
  if (!s) return nullptr;
  return s->to_string();
}

void add_spectrum_notes(HalfInteger s, const Spectrum& computed, Json& notes) {
  // The 16-dimensional case has a frequently misquoted top multiplicity.
  if (s.twice() == 3 && !computed.clusters.empty()) {
    const Cluster& top = computed.clusters.back();
    notes.push_back("spin 3/2: eigenvalue " + num(top.value) + " has multiplicity " +
                    std::to_string(top.multiplicity) +
                    " (2J+1 with J=3); a multiplicity of 1 would leave the "
                    "multiplicities summing to 10 instead of 16");
  }
}

struct VerifyParams {
  double tol = kDefaultTol;
  double algebra_tol = kAlgebraTol;
  int kmax = 0;
  std::optional<double> cluster_tol;
  EigOptions eig;
};

Json algebra_json(const AlgebraReport& r) {
  Json res = Json::array();
  for (const Residual& x : r.residuals) {
    res.push_back({{"name", x.name}, {"value", clean(x.value)}});
  }
  return {{"tol", r.tol},
          {"bound", r.bound},
          {"max_residual", clean(r.max_residual())},
          {"pass", r.pass},
          {"residuals", std::move(res)}};
}

Json moments_json(const MomentReport& m) {
  Json raw_a = Json::array(), raw_b = Json::array();
  Json norm_a = Json::array(), norm_b = Json::array();
  for (std::size_t i = 0; i < m.powers.size(); ++i) {
    const auto a = m.raw_a(i);
    const auto b = m.raw_b(i);
    raw_a.push_back(a ? Json(clean(*a)) : Json(nullptr));
    raw_b.push_back(b ? Json(clean(*b)) : Json(nullptr));
    norm_a.push_back(clean(m.traces_a[i]));
    norm_b.push_back(clean(m.traces_b[i]));
  }
  return {{"kmax", m.powers.size()},
          {"scale", m.scale},
          {"tol", m.tol},
          {"bound", m.bound},
          {"max_abs_diff", clean(m.max_abs_diff)},
          {"pass", m.pass},
          {"prefix_len", m.prefix_len},
          {"prefix_pass", m.prefix_pass},
          {"powers", m.powers},
          {"traces_a", std::move(raw_a)},
          {"traces_b", std::move(raw_b)},
          {"normalized_a", std::move(norm_a)},
          {"normalized_b", std::move(norm_b)}};
}

// su(2) checks, trace identities and the H/K isospectrality certificate for
// one spin. Shared by `verify` and every `table` row.
Json verify_report(HalfInteger s, const VerifyParams& p) {
  const SpinTriple triple = make_spin_triple(s);
  const AlgebraReport algebra = verify_su2(triple, p.algebra_tol);
  const Hamiltonian h = build_heisenberg(s);
  const Hamiltonian k = build_cyclic(s);

  CertifyOptions co;
  co.kmax = p.kmax;
  co.tol = p.tol;
  co.prefix = s.dimension();
  co.eig = p.eig;
  co.cluster_tol = p.cluster_tol;
  const IsospectralReport iso = certify_isospectral(h.matrix, k.matrix, co);

  const Spectrum oracle = closed_form_spectrum(s);
  const bool oracle_match =
      iso.spectrum_a.matches(oracle) && iso.spectrum_b.matches(oracle);

  Json notes = Json::array();
  add_spectrum_notes(s, iso.spectrum_a, notes);
  const double quartic = power_trace(triple.s3, 4);
  const double q = quadratic_trace(s);
  if (std::abs(quartic - q) > 1e-9 * std::max(1.0, q)) {
    notes.push_back("tr(Sj^4) = " + num(quartic) + " differs from s(s+1)(2s+1)/3 = " +
                    num(q) + "; that closed form holds for the square only");
  }
  notes.push_back(
      "moments j <= " + std::to_string(iso.moments.prefix_len) + " " +
      (iso.moments.prefix_pass ? "agree" : "DISAGREE") +
      "; verdict uses direct spectra, moments through j = " +
      std::to_string(iso.moments.powers.size()) + " corroborate");

  const bool verdict = algebra.pass && iso.spectra_equal && iso.moments.pass &&
                       oracle_match && iso.newton_a && iso.newton_b;
  return {{"spin", s.to_string()},
          {"dimension", h.matrix.rows()},
          {"hamiltonian", "H"},
          {"partner", "K"},
          {"cluster_tol", iso.spectrum_a.cluster_tol},
          {"clusters", clusters_json(iso.spectrum_a)},
          {"partner_clusters", clusters_json(iso.spectrum_b)},
          {"oracle_clusters", clusters_json(oracle)},
          {"oracle_match", oracle_match},
          {"spectra_equal", iso.spectra_equal},
          {"newton", {{"H", iso.newton_a}, {"K", iso.newton_b}}},
          {"algebra", algebra_json(algebra)},
          {"moments", moments_json(iso.moments)},
          {"verdict", verdict},
          {"notes", std::move(notes)}};
}

// ---------------------------------------------------------------------------
// plain / csv rendering from the JSON document, so all three formats carry
// the same numbers.

void plain_clusters(std::ostream& out, const std::string& title, const Json& clusters) {
  out << title << "\n";
  for (const Json& c : clusters) {
    out << "  " << num(c["value"].get<double>()) << "  (" << label_or_value(c)
        << ")  x" << c["multiplicity"].get<std::size_t>() << "\n";
  }
}

void csv_clusters(std::ostream& out, const std::string& who, const Json& clusters) {
  for (const Json& c : clusters) {
    out << who << "," << num(c["value"].get<double>()) << ","
        << (c["exact"].is_null() ? "" : c["exact"].get<std::string>()) << ","
        << c["multiplicity"].get<std::size_t>() << "\n";
  }
}

void plain_notes(std::ostream& out, const Json& notes) {
  if (notes.empty()) return;
  out << "notes:\n";
  for (const Json& n : notes) out << "  - " << n.get<std::string>() << "\n";
}

void csv_notes(std::ostream& out, const Json& notes) {
  out << "# notes\nnote\n";
  for (const Json& n : notes) out << csv_field(n.get<std::string>()) << "\n";
}

void render_spectrum(const Json& r, OutputFormat f, std::ostream& out) {
  if (f == OutputFormat::kJson) {
    out << r.dump(2) << "\n";
    return;
  }
  const std::string spin = r["spin"].is_null() ? "" : r["spin"].get<std::string>();
  if (f == OutputFormat::kPlain) {
    out << "spectrum of " << r["hamiltonian"].get<std::string>();
    if (!spin.empty()) out << " for spin " << spin;
    out << " (dimension " << r["dimension"].get<std::size_t>() << ", cluster tol "
        << num(r["cluster_tol"].get<double>()) << ")\n";
    out << "eigensolver: residual " << num(r["eigen_residual"].get<double>())
        << ", sweeps " << r["sweeps"].get<int>() << "\n";
    plain_clusters(out, "value  (exact)  multiplicity", r["clusters"]);
    if (!r["oracle_clusters"].is_null()) {
      plain_clusters(out, "closed form", r["oracle_clusters"]);
      out << "closed form match: " << yes_no(r["oracle_match"]) << "\n";
    }
    plain_notes(out, r["notes"]);
    return;
  }
  out << "# summary\nspin,dimension,hamiltonian,cluster_tol,eigen_residual,sweeps,"
         "oracle_match,verdict\n"
      << spin << "," << r["dimension"].get<std::size_t>() << ","
      << r["hamiltonian"].get<std::string>() << "," << num(r["cluster_tol"].get<double>())
      << "," << num(r["eigen_residual"].get<double>()) << "," << r["sweeps"].get<int>()
      << "," << (r["oracle_match"].is_null() ? "" : bool_text(r["oracle_match"])) << ","
      << bool_text(r["verdict"]) << "\n";
  out << "# clusters\nsource,value,exact,multiplicity\n";
  csv_clusters(out, r["hamiltonian"].get<std::string>(), r["clusters"]);
  if (!r["oracle_clusters"].is_null()) csv_clusters(out, "oracle", r["oracle_clusters"]);
  csv_notes(out, r["notes"]);
}

void plain_verify_body(const Json& r, std::ostream& out) {
  const Json& alg = r["algebra"];
  out << "spin " << r["spin"].get<std::string>() << ", dimension "
      << r["dimension"].get<std::size_t>()
      << "  (H = S1(x)S1 + S2(x)S2 + S3(x)S3, K = S1(x)S2 + S2(x)S3 + S3(x)S1)\n";
  out << "su(2) relations and trace identities: " << pass_fail(alg["pass"])
      << " (max residual " << num(alg["max_residual"].get<double>()) << ", bound "
      << num(alg["bound"].get<double>()) << ")\n";
  for (const Json& x : alg["residuals"]) {
    out << "  " << x["name"].get<std::string>() << " = " << num(x["value"].get<double>())
        << "\n";
  }
  out << "cluster tol " << num(r["cluster_tol"].get<double>()) << "\n";
  plain_clusters(out, "spectrum of H", r["clusters"]);
  plain_clusters(out, "spectrum of K", r["partner_clusters"]);
  plain_clusters(out, "closed form", r["oracle_clusters"]);
  out << "closed form match: " << yes_no(r["oracle_match"]) << "\n";
  const Json& m = r["moments"];
  out << "moments tr(X^k), compared as tr((X/scale)^k) with scale "
      << num(m["scale"].get<double>()) << ", bound " << num(m["bound"].get<double>())
      << " (* marks k <= " << m["prefix_len"].get<std::size_t>() << ")\n";
  out << "  k  tr(H^k)  tr(K^k)  normalized H  normalized K\n";
  const auto prefix = m["prefix_len"].get<std::size_t>();
  for (std::size_t i = 0; i < m["powers"].size(); ++i) {
    out << (i < prefix ? "* " : "  ") << m["powers"][i].get<int>() << "  "
        << num_or_null(m["traces_a"][i]) << "  " << num_or_null(m["traces_b"][i]) << "  "
        << num(m["normalized_a"][i].get<double>()) << "  "
        << num(m["normalized_b"][i].get<double>()) << "\n";
  }
  out << "max normalized difference " << num(m["max_abs_diff"].get<double>()) << "\n";
  out << "spectra equal: " << yes_no(r["spectra_equal"])
      << ", moments: " << pass_fail(m["pass"])
      << ", moments k <= " << prefix << ": " << pass_fail(m["prefix_pass"])
      << ", newton H/K: " << pass_fail(r["newton"]["H"]) << "/"
      << pass_fail(r["newton"]["K"]) << "\n";
  out << "verdict: " << (r["verdict"].get<bool>() ? "isospectral (verified)" : "NOT verified")
      << "\n";
  plain_notes(out, r["notes"]);
}

void csv_verify_body(const Json& r, std::ostream& out) {
  const Json& m = r["moments"];
  const Json& alg = r["algebra"];
  out << "# summary\nspin,dimension,cluster_tol,algebra_pass,spectra_equal,"
         "moments_pass,prefix_len,prefix_pass,oracle_match,newton_h,newton_k,verdict\n"
      << r["spin"].get<std::string>() << "," << r["dimension"].get<std::size_t>() << ","
      << num(r["cluster_tol"].get<double>()) << "," << bool_text(alg["pass"]) << ","
      << bool_text(r["spectra_equal"]) << "," << bool_text(m["pass"]) << ","
      << m["prefix_len"].get<std::size_t>() << "," << bool_text(m["prefix_pass"]) << ","
      << bool_text(r["oracle_match"]) << "," << bool_text(r["newton"]["H"]) << ","
      << bool_text(r["newton"]["K"]) << "," << bool_text(r["verdict"]) << "\n";
  out << "# clusters\nsource,value,exact,multiplicity\n";
  csv_clusters(out, "H", r["clusters"]);
  csv_clusters(out, "K", r["partner_clusters"]);
  csv_clusters(out, "oracle", r["oracle_clusters"]);
  out << "# algebra\nname,value,bound\n";
  for (const Json& x : alg["residuals"]) {
    out << csv_field(x["name"].get<std::string>()) << "," << num(x["value"].get<double>())
        << "," << num(alg["bound"].get<double>()) << "\n";
  }
  out << "# moments\nk,trace_h,trace_k,normalized_h,normalized_k,scale,bound,in_prefix\n";
  const auto prefix = m["prefix_len"].get<std::size_t>();
  for (std::size_t i = 0; i < m["powers"].size(); ++i) {
    const auto nn = [](const Json& j) { return j.is_null() ? std::string() : num(j.get<double>()); };
    out << m["powers"][i].get<int>() << "," << nn(m["traces_a"][i]) << ","
        << nn(m["traces_b"][i]) << "," << num(m["normalized_a"][i].get<double>()) << ","
        << num(m["normalized_b"][i].get<double>()) << "," << num(m["scale"].get<double>())
        << "," << num(m["bound"].get<double>()) << "," << (i < prefix ? "true" : "false")
        << "\n";
  }
  csv_notes(out, r["notes"]);
}

void render_verify(const Json& r, OutputFormat f, std::ostream& out) {
  if (f == OutputFormat::kJson) {
    out << r.dump(2) << "\n";
  } else if (f == OutputFormat::kPlain) {
    plain_verify_body(r, out);
  } else {
    csv_verify_body(r, out);
  }
}

std::string spectrum_summary(const Json& clusters, bool numeric) {
  std::string s;
  for (const Json& c : clusters) {
    if (!s.empty()) s += numeric ? ";" : ", ";
    s += numeric ? num(c["value"].get<double>()) + ":" +
                       std::to_string(c["multiplicity"].get<std::size_t>())
                 : label_or_value(c) + " (" + num(c["value"].get<double>()) + ") x" +
                       std::to_string(c["multiplicity"].get<std::size_t>());
  }
  return s;
}

void render_table(const Json& t, OutputFormat f, std::ostream& out) {
  if (f == OutputFormat::kJson) {
    out << t.dump(2) << "\n";
    return;
  }
  if (f == OutputFormat::kPlain) {
    out << "spin  dim  isospectral  moments(k<=2s+1)  moments(all)  closed-form  "
           "algebra  spectrum of H and K\n";
    for (const Json& r : t["rows"]) {
      out << r["spin"].get<std::string>() << "  " << r["dimension"].get<std::size_t>()
          << "  " << yes_no(r["spectra_equal"]) << "  "
          << pass_fail(r["moments"]["prefix_pass"]) << "  "
          << pass_fail(r["moments"]["pass"]) << "  "
          << (r["oracle_match"].get<bool>() ? "match" : "MISMATCH") << "  "
          << pass_fail(r["algebra"]["pass"]) << "  " << spectrum_summary(r["clusters"], false)
          << "\n";
    }
    for (const Json& r : t["rows"]) {
      for (const Json& n : r["notes"]) {
        out << "note [spin " << r["spin"].get<std::string>() << "]: " << n.get<std::string>()
            << "\n";
      }
    }
    out << "verdict: " << (t["verdict"].get<bool>() ? "all rows verified" : "NOT verified")
        << "\n";
    return;
  }
  out << "spin,dimension,spectra_equal,prefix_len,prefix_pass,moments_pass,"
         "oracle_match,algebra_pass,verdict,spectrum\n";
  for (const Json& r : t["rows"]) {
    out << r["spin"].get<std::string>() << "," << r["dimension"].get<std::size_t>() << ","
        << bool_text(r["spectra_equal"]) << "," << r["moments"]["prefix_len"].get<std::size_t>()
        << "," << bool_text(r["moments"]["prefix_pass"]) << ","
        << bool_text(r["moments"]["pass"]) << "," << bool_text(r["oracle_match"]) << ","
        << bool_text(r["algebra"]["pass"]) << "," << bool_text(r["verdict"]) << ","
        << spectrum_summary(r["clusters"], true) << "\n";
  }
}

void render_gate(const Json& g, OutputFormat f, std::ostream& out) {
  if (f == OutputFormat::kJson) {
    out << g.dump(2) << "\n";
    return;
  }
  const Json& m = g["matrix"];
  const Json& check = g["check"];
  if (f == OutputFormat::kPlain) {
    out << "U(theta) = exp(-i theta " << g["hamiltonian"].get<std::string>()
        << ") for spin " << g["spin"].get<std::string>() << ", theta "
        << num(g["theta"].get<double>()) << " (dimension "
        << g["dimension"].get<std::size_t>() << ")\n";
    for (const Json& row : m) {
      std::string line;
      for (const Json& z : row) {
        const double re = z[0].get<double>(), im = z[1].get<double>();
        if (!line.empty()) line += "  ";
        line += num(re) + (std::signbit(im) ? "" : "+") + num(im) + "i";
      }
      out << line << "\n";
    }
    out << "unitarity residual ||U^dagger U - I||_F = "
        << num(g["unitarity_residual"].get<double>()) << "\n";
    if (!check.is_null()) {
      out << "fidelity with identity " << num(check["identity_fidelity"].get<double>())
          << ", global phase arg tr(U) = " << num(check["global_phase"].get<double>())
          << "\n";
      out << "eigenvalue  (exact)  multiplicity  eigenphase -theta*lambda\n";
      for (const Json& e : check["eigenphases"]) {
        out << "  " << num(e["eigenvalue"].get<double>()) << "  ("
            << (e["exact"].is_null() ? num(e["eigenvalue"].get<double>())
                                     : e["exact"].get<std::string>())
            << ")  x" << e["multiplicity"].get<std::size_t>() << "  "
            << num(e["phase"].get<double>()) << "\n";
      }
      out << "unitarity check (limit " << num(check["unitarity_limit"].get<double>())
          << "): " << pass_fail(g["verdict"]) << "\n";
    }
    plain_notes(out, g["notes"]);
    return;
  }
  out << "# summary\nspin,dimension,hamiltonian,theta,unitarity_residual,verdict\n"
      << g["spin"].get<std::string>() << "," << g["dimension"].get<std::size_t>() << ","
      << g["hamiltonian"].get<std::string>() << "," << num(g["theta"].get<double>()) << ","
      << num(g["unitarity_residual"].get<double>()) << "," << bool_text(g["verdict"])
      << "\n";
  out << "# matrix\nrow,col,re,im\n";
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m[i].size(); ++j) {
      out << i << "," << j << "," << num(m[i][j][0].get<double>()) << ","
          << num(m[i][j][1].get<double>()) << "\n";
    }
  }
  if (!check.is_null()) {
    out << "# check\nidentity_fidelity,global_phase,unitarity_limit\n"
        << num(check["identity_fidelity"].get<double>()) << ","
        << num(check["global_phase"].get<double>()) << ","
        << num(check["unitarity_limit"].get<double>()) << "\n";
    out << "# eigenphases\neigenvalue,exact,multiplicity,phase\n";
    for (const Json& e : check["eigenphases"]) {
      out << num(e["eigenvalue"].get<double>()) << ","
          << (e["exact"].is_null() ? "" : e["exact"].get<std::string>()) << ","
          << e["multiplicity"].get<std::size_t>() << "," << num(e["phase"].get<double>())
          << "\n";
    }
  }
  csv_notes(out, g["notes"]);
}

// ---------------------------------------------------------------------------
// commands

OutputFormat parse_format(const std::string& s) {
  if (s == "json") return OutputFormat::kJson;
  if (s == "csv") return OutputFormat::kCsv;
  return OutputFormat::kPlain;
}

HamiltonianKind parse_kind(const std::string& s) {
  if (s == "H") return HeisenbergH{};
  return CyclicK{};
}

struct SpectrumArgs {
  std::string spin;
  std::string hamiltonian = "H";
  std::string matrix_file;
  std::optional<double> cluster_tol;
};

int cmd_spectrum(const SpectrumArgs& a, const EigOptions& eig, OutputFormat f,
                 std::ostream& out) {
  std::optional<HalfInteger> s;
  std::optional<CMatrix> matrix;
  if (a.hamiltonian == "file") {
    if (a.matrix_file.empty()) {
      throw DomainError("--hamiltonian file requires --matrix-file PATH");
    }
    if (!a.spin.empty()) s = HalfInteger::parse(a.spin);
    matrix = read_matrix_file(a.matrix_file);
  } else {
    if (a.spin.empty()) throw DomainError("--spin is required for H and K");
    s = HalfInteger::parse(a.spin);
    matrix = build_hamiltonian(*s, parse_kind(a.hamiltonian)).matrix;
  }
  if (a.cluster_tol && !(*a.cluster_tol > 0.0)) {
    throw DomainError("--cluster-tol must be positive");
  }

  const EigDecomposition d = hermitian_eig(*matrix, eig);
  const Spectrum computed =
      cluster_spectrum(d.values, a.cluster_tol.value_or(default_cluster_tol(*matrix)));

  Json notes = Json::array();
  Json oracle = nullptr;
  Json oracle_match = nullptr;
  bool verdict = true;
  if (a.hamiltonian != "file") {
    const Spectrum closed = closed_form_spectrum(*s);
    oracle = clusters_json(closed);
    verdict = computed.matches(closed);
    oracle_match = verdict;
    add_spectrum_notes(*s, computed, notes);
  }
  const Json report{{"command", "spectrum"},
                    {"spin", spin_json(s)},
                    {"dimension", matrix->rows()},
                    {"hamiltonian", a.hamiltonian},
                    {"cluster_tol", computed.cluster_tol},
                    {"clusters", clusters_json(computed)},
                    {"eigen_residual", clean(d.residual)},
                    {"sweeps", d.sweeps},
                    {"oracle_clusters", oracle},
                    {"oracle_match", oracle_match},
                    {"verdict", verdict},
                    {"notes", notes}};
  render_spectrum(report, f, out);
  return static_cast<int>(verdict ? ExitStatus::kOk : ExitStatus::kVerificationFailed);
}

int cmd_verify(const std::string& spin, const VerifyParams& p, OutputFormat f,
               std::ostream& out) {
  Json report{{"command", "verify"}};
  report.update(verify_report(HalfInteger::parse(spin), p));
  render_verify(report, f, out);
  return static_cast<int>(report["verdict"].get<bool>() ? ExitStatus::kOk
                                                        : ExitStatus::kVerificationFailed);
}

int cmd_table(const std::string& max_spin, const VerifyParams& p, OutputFormat f,
              std::ostream& out) {
  const HalfInteger top = HalfInteger::parse(max_spin);
  Json rows = Json::array();
  bool all = true;
  for (int twice = 1; twice <= top.twice(); ++twice) {
    Json row = verify_report(HalfInteger(twice), p);
    all = all && row["verdict"].get<bool>();
    rows.push_back(std::move(row));
  }
  const Json table{{"command", "table"},
                   {"max_spin", top.to_string()},
                   {"rows", std::move(rows)},
                   {"verdict", all}};
  render_table(table, f, out);
  return static_cast<int>(all ? ExitStatus::kOk : ExitStatus::kVerificationFailed);
}

struct GateArgs {
  std::string spin;
  std::string hamiltonian = "H";
  double theta = 0.0;
  bool check = false;
};

int cmd_gate(const GateArgs& a, const EigOptions& eig, OutputFormat f, std::ostream& out) {
  const HalfInteger s = HalfInteger::parse(a.spin);
  const Hamiltonian h = build_hamiltonian(s, parse_kind(a.hamiltonian));
  const Gate g = synthesize_gate(h, a.theta, eig);
  const double residual = unitarity_residual(g.matrix);
  const std::size_t n = g.matrix.rows();

  Json matrix = Json::array();
  for (std::size_t i = 0; i < n; ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < n; ++j) {
      row.push_back({clean(g.matrix(i, j).real()), clean(g.matrix(i, j).imag())});
    }
    matrix.push_back(std::move(row));
  }

  Json check = nullptr;
  bool verdict = true;
  if (a.check) {
    verdict = residual <= kUnitarityLimit;
    const Complex tr = trace(g.matrix);
    const Spectrum computed = cluster_spectrum(g.eigenvalues, default_cluster_tol(h.matrix));
    Json phases = Json::array();
    for (const Cluster& c : computed.clusters) {
      phases.push_back({{"eigenvalue", clean(c.value)},
                        {"exact", quarter_label(c.value)},
                        {"multiplicity", c.multiplicity},
                        {"phase", clean(wrap_phase(-a.theta * c.value))}});
    }
    check = {{"unitarity_limit", kUnitarityLimit},
             {"identity_fidelity", gate_fidelity(CMatrix::identity(n), g.matrix)},
             {"global_phase", clean(std::abs(tr) > 1e-12 ? std::arg(tr) : 0.0)},
             {"eigenphases", std::move(phases)}};
  }
  const Json report{{"command", "gate"},
                    {"spin", s.to_string()},
                    {"dimension", n},
                    {"hamiltonian", a.hamiltonian},
                    {"theta", a.theta},
                    {"unitarity_residual", clean(residual)},
                    {"matrix", std::move(matrix)},
                    {"check", std::move(check)},
                    {"verdict", verdict},
                    {"notes", Json::array()}};
  render_gate(report, f, out);
  return static_cast<int>(verdict ? ExitStatus::kOk : ExitStatus::kVerificationFailed);
}

double default_tolerance() {
  const char* env = std::getenv("SPIN_TOOL_TOL");
  if (env == nullptr || *env == '\0') return kDefaultTol;
  const std::string_view text(env);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !(v > 0.0) ||
      !std::isfinite(v)) {
    throw DomainError("SPIN_TOOL_TOL must be a positive number, got '" +
                      std::string(text) + "'");
  }
  return v;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    CLI::App app{"Spin-s operator hierarchy: two-site Hamiltonian spectra, "
                 "isospectrality certificates and gates"};
    app.name("spin_tool");
    app.require_subcommand(1);

    std::string format = "plain";
    const auto formats = CLI::IsMember({"plain", "json", "csv"});
    EigOptions eig;
    const double tol_default = default_tolerance();

    auto add_eig = [&](CLI::App* sub) {
      sub->add_option("--eig-tol", eig.tol, "Jacobi stopping tolerance (relative)")
          ->check(CLI::PositiveNumber);
      sub->add_option("--max-sweeps", eig.max_sweeps, "Jacobi sweep limit")
          ->check(CLI::PositiveNumber);
      sub->add_option("--format", format, "plain, json or csv")->check(formats);
    };

    SpectrumArgs sa;
    double spectrum_cluster_tol = 0.0;
    auto* spectrum = app.add_subcommand("spectrum", "Clustered spectrum of H, K or a matrix file");
    spectrum->add_option("--spin", sa.spin, "spin s, e.g. 1/2, 1, 3/2 or 1.5");
    spectrum->add_option("--hamiltonian", sa.hamiltonian, "H, K or file")
        ->check(CLI::IsMember({"H", "K", "file"}));
    spectrum->add_option("--matrix-file", sa.matrix_file,
                         "square matrix, one row per line, entries like 1-2i");
    auto* ctol = spectrum->add_option("--cluster-tol", spectrum_cluster_tol,
                                      "eigenvalue clustering tolerance");
    add_eig(spectrum);

    std::string verify_spin;
    VerifyParams vp;
    vp.tol = tol_default;
    double verify_cluster_tol = 0.0;
    auto* verify = app.add_subcommand("verify", "Certify H and K isospectral for one spin");
    verify->add_option("--spin", verify_spin, "spin s")->required();
    verify->add_option("--kmax", vp.kmax, "highest moment power (default: dimension)")
        ->check(CLI::PositiveNumber);
    verify->add_option("--tol", vp.tol, "moment tolerance (env SPIN_TOOL_TOL)")
        ->check(CLI::PositiveNumber);
    verify->add_option("--algebra-tol", vp.algebra_tol, "su(2) residual tolerance")
        ->check(CLI::PositiveNumber);
    auto* vctol = verify->add_option("--cluster-tol", verify_cluster_tol,
                                     "eigenvalue clustering tolerance")
                      ->check(CLI::PositiveNumber);
    add_eig(verify);

    GateArgs ga;
    auto* gate = app.add_subcommand("gate", "Build U(theta) = exp(-i theta H)");
    gate->add_option("--spin", ga.spin, "spin s")->required();
    gate->add_option("--hamiltonian", ga.hamiltonian, "H or K")
        ->check(CLI::IsMember({"H", "K"}));
    gate->add_option("--theta", ga.theta, "dimensionless angle omega*t")->required();
    gate->add_flag("--check", ga.check, "report unitarity residual and eigenphases");
    add_eig(gate);

    std::string max_spin;
    VerifyParams tp;
    tp.tol = tol_default;
    auto* table = app.add_subcommand("table", "Verify every spin from 1/2 up to --max-spin");
    table->add_option("--max-spin", max_spin, "largest spin")->required();
    table->add_option("--kmax", tp.kmax, "highest moment power (default: dimension)")
        ->check(CLI::PositiveNumber);
    table->add_option("--tol", tp.tol, "moment tolerance (env SPIN_TOOL_TOL)")
        ->check(CLI::PositiveNumber);
    add_eig(table);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
      app.parse(reversed);
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e, out, err);
      return code == 0 ? 0 : static_cast<int>(ExitStatus::kUsage);
    }

    const OutputFormat f = parse_format(format);
    if (spectrum->parsed()) {
      if (ctol->count() > 0) sa.cluster_tol = spectrum_cluster_tol;
      return cmd_spectrum(sa, eig, f, out);
    }
    if (verify->parsed()) {
      vp.eig = eig;
      if (vctol->count() > 0) vp.cluster_tol = verify_cluster_tol;
      return cmd_verify(verify_spin, vp, f, out);
    }
    if (gate->parsed()) return cmd_gate(ga, eig, f, out);
    tp.eig = eig;
    return cmd_table(max_spin, tp, f, out);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\nRun with --help for usage.\n";
    return static_cast<int>(ExitStatus::kUsage);
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return static_cast<int>(ExitStatus::kNumerical);
  }
}

}  // namespace spinhier::cli
