#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <variant>

#include "CLI11.hpp"
#include "json.hpp"
#include "susymorse/cli.hpp"
#include "susymorse/coherent.hpp"
#include "susymorse/observables.hpp"
#include "susymorse/residual.hpp"
#include "susymorse/spectrum.hpp"
#include "susymorse/susy.hpp"

namespace susymorse::cli {

namespace {

// Exit with a specific code from inside a command.
struct CommandError : std::runtime_error {
  CommandError(int code, const std::string& what) : std::runtime_error(what), code(code) {}
  int code;
};

using Cell = std::variant<long long, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string cell_text(const Cell& c) {
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&c)) return format_real(*d);
  return std::get<std::string>(c);
}

nlohmann::json cell_json(const Cell& c) {
  if (const auto* i = std::get_if<long long>(&c)) return *i;
  // Round through the fixed text format so CSV and JSON carry the same value.
  if (const auto* d = std::get_if<double>(&c)) return std::stod(format_real(*d));
  return std::get<std::string>(c);
}

void write_table(const Table& t, OutputFormat format, std::ostream& os) {
  if (format == OutputFormat::csv) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell_text(row[i]);
      os << '\n';
    }
    return;
  }
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : t.rows) {
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[t.columns[i]] = cell_json(row[i]);
    rows.push_back(std::move(obj));
  }
  nlohmann::json doc = {{"columns", t.columns}, {"rows", rows}};
  os << doc.dump(2) << '\n';
}

template <typename Fn>
void with_output(const std::string& path, std::ostream& out, Fn&& fn) {
  if (path == "-") {
    fn(out);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw CommandError(kConfigError, "cannot open output '" + path + "'");
  fn(file);
  if (!file) throw CommandError(kRuntimeError, "write failed for '" + path + "'");
}

QuadratureGrid make_grid(const MorseParams& params, const RunConfig& config) {
  QuadratureOptions q;
  q.core_panels = config.panels;
  q.nodes_per_panel = config.nodes;
  return QuadratureGrid::build(params, q);
}

const Complex kGammaAntisym{1.0 / std::numbers::sqrt2, 0.0};

SpectrumTable mu_table(const MorseParams& params) {
  return build_mu_basis(params, kGammaAntisym, -kGammaAntisym);
}

// ---------------------------------------------------------------------------

int cmd_spectrum(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const auto params = MorseParams::from_p(config.p);
  const auto table = mu_table(params);
  Table t{{"basis", "index", "n", "m", "energy", "scaled_energy"}, {}};
  for (const auto& s : table.mu) {
    t.rows.push_back({std::string("mu"), (long long)s.index, (long long)s.pair.n, (long long)s.pair.m, s.energy,
                      scaled_spectrum(params, s.pair)});
  }
  for (std::size_t i = 0; i < table.partner_pairs.size(); ++i) {
    const auto& pr = table.partner_pairs[i];
    t.rows.push_back({std::string("nu"), (long long)i, (long long)pr.n, (long long)pr.m, energy(params, pr),
                      scaled_spectrum(params, pr)});
  }
  if (table.partner_pairs.empty()) {
    err << "warning: k = " << params.k << " < 2, the partner basis is empty\n";
  }
  with_output(config.output, out, [&](std::ostream& os) { write_table(t, config.format, os); });
  return kOk;
}

std::vector<NuState> nu_basis_or_throw(const MorseParams& params, int code) {
  try {
    return build_nu_basis(params);
  } catch (const EmptyBasis& e) {
    throw CommandError(code, e.what());
  }
}

int cmd_states(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const auto params = MorseParams::from_p(config.p);
  Table t{{"index", "n", "m", "mu_index", "energy", "scaled_energy", "r_eigenvalue"}, {}};
  if (params.k < 2) {
    err << "warning: k = " << params.k << " < 2, the partner basis is empty\n";
  } else {
    for (const auto& s : build_nu_basis(params)) {
      t.rows.push_back({(long long)s.index, (long long)s.source.n, (long long)s.source.m, (long long)s.mu_index,
                        s.energy, scaled_spectrum(params, s.source), s.norm_sq_analytic});
    }
  }
  with_output(config.output, out, [&](std::ostream& os) { write_table(t, config.format, os); });
  return kOk;
}

int cmd_coherent(const RunConfig& config, double phi, std::ostream& out) {
  const auto params = MorseParams::from_p(config.p);
  const auto basis = nu_basis_or_throw(params, kRuntimeError);
  const auto spec = LadderSpec::from_partner_basis(params, basis);
  const auto c = coherent_coefficients(spec, Complex(phi, 0.0));
  double norm = 0.0;
  for (const auto& v : c) norm += std::norm(v);
  Table t{{"index", "n", "m", "coefficient", "weight"}, {}};
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double coeff = c[i].real() / std::sqrt(norm);
    t.rows.push_back({(long long)i, (long long)basis[i].source.n, (long long)basis[i].source.m, coeff,
                      std::norm(c[i]) / norm});
  }
  with_output(config.output, out, [&](std::ostream& os) { write_table(t, config.format, os); });
  return kOk;
}

std::filesystem::path sidecar_path(const std::string& output) {
  std::filesystem::path p(output);
  auto side = p;
  side.replace_extension(".json");
  if (side == p) side = std::filesystem::path(output + ".manifest.json");
  return side;
}

int cmd_density(const RunConfig& config, const std::string& basis_name, const std::string& argument,
                std::ostream& out, std::ostream& err) {
  const auto params = MorseParams::from_p(config.p);
  ScalarField2D field;
  nlohmann::json index_json = nullptr, phi_json = nullptr;

  if (basis_name == "coherent") {
    double phi = 0.0;
    try {
      std::size_t used = 0;
      phi = std::stod(argument, &used);
      if (used != argument.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw CommandError(kConfigError, "density coherent: phi must be a number, got '" + argument + "'");
    }
    const auto basis = nu_basis_or_throw(params, kRuntimeError);
    field = coherent_state(params, basis, Complex(phi, 0.0)).field;
    phi_json = phi;
  } else {
    long long index = 0;
    try {
      std::size_t used = 0;
      index = std::stoll(argument, &used);
      if (used != argument.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw CommandError(kConfigError, "density " + basis_name + ": index must be an integer, got '" + argument + "'");
    }
    if (basis_name == "mu") {
      const auto table = mu_table(params);
      if (index < 0 || index >= (long long)table.mu.size()) {
        throw CommandError(kIndexError, "mu index " + argument + " out of range [0, " +
                                            std::to_string(table.mu.size()) + ")");
      }
      field = mu_field(params, table.mu[index]);
    } else {
      const auto basis = nu_basis_or_throw(params, kIndexError);
      if (index < 0 || index >= (long long)basis.size()) {
        throw CommandError(kIndexError, "nu index " + argument + " out of range [0, " +
                                            std::to_string(basis.size()) + ")");
      }
      field = basis[index].field;
    }
    index_json = index;
  }

  const auto density = density_grid(field, config.box, config.nx, config.ny);
  const double normalization = grid_normalization(density);

  with_output(config.output, out, [&](std::ostream& os) {
    os << "x,y,density\n";
    for (std::size_t iy = 0; iy < density.ny(); ++iy) {
      for (std::size_t ix = 0; ix < density.nx(); ++ix) {
        os << format_real(density.xs[ix]) << ',' << format_real(density.ys[iy]) << ','
           << format_real(density.at(ix, iy)) << '\n';
      }
    }
  });

  nlohmann::json manifest = {
      {"format_version", kManifestFormatVersion},
      {"p", config.p},
      {"basis", basis_name},
      {"index", index_json},
      {"phi", phi_json},
      {"box", {config.box.x_min, config.box.x_max, config.box.y_min, config.box.y_max}},
      {"nx", config.nx},
      {"ny", config.ny},
      {"normalization", std::stod(format_real(normalization))},
  };
  if (config.output == "-") {
    err << "note: density written to stdout; no manifest\n";
    return kOk;
  }
  const auto side = sidecar_path(config.output);
  std::ofstream mf(side, std::ios::binary);
  if (!mf) throw CommandError(kConfigError, "cannot open manifest '" + side.string() + "'");
  mf << manifest.dump(2) << '\n';
  return kOk;
}

int cmd_uncertainty(const RunConfig& config, double phi_min, double phi_max, int steps, std::ostream& out) {
  if (!(phi_min <= phi_max) || steps < 1 || !std::isfinite(phi_min) || !std::isfinite(phi_max)) {
    throw CommandError(kConfigError, "uncertainty: need phi_min <= phi_max and steps >= 1");
  }
  const auto params = MorseParams::from_p(config.p);
  const auto basis = nu_basis_or_throw(params, kRuntimeError);
  const auto spec = LadderSpec::from_partner_basis(params, basis);
  const auto matrices = basis_matrices(make_partner_evaluator(params, basis), make_grid(params, config));

  Table t{{"phi", "varQ", "varP", "product"}, {}};
  for (int i = 0; i < steps; ++i) {
    const double phi = steps == 1 ? phi_min : phi_min + (phi_max - phi_min) * i / (steps - 1);
    auto c = coherent_coefficients(spec, Complex(phi, 0.0));
    double norm = 0.0;
    for (const auto& v : c) norm += std::norm(v);
    for (auto& v : c) v /= std::sqrt(norm);
    const auto r = uncertainty_from_moments(moments_from_coefficients(matrices, c), phi);
    t.rows.push_back({phi, r.var_q, r.var_p, r.product});
  }
  with_output(config.output, out, [&](std::ostream& os) { write_table(t, config.format, os); });
  return kOk;
}

// ---------------------------------------------------------------------------
// verify

class Verifier {
 public:
  explicit Verifier(std::ostream& out) : out_(out) {}

  void check(bool ok, const std::string& name, const std::string& detail) {
    out_ << (ok ? "PASS " : "FAIL ") << name << ": " << detail << '\n';
    failures_ += ok ? 0 : 1;
  }
  [[nodiscard]] int failures() const { return failures_; }

 private:
  std::ostream& out_;
  int failures_ = 0;
};

void verify_counting(const MorseParams& params, Verifier& v) {
  const auto count = [](const MorseParams& pp) { return build_mu_basis(pp, kGammaAntisym, -kGammaAntisym).counts; };
  const auto c = count(params);
  const int k = params.k;
  const int mu = (k + 1) * (k + 2) / 2, nu = k * (k - 1) / 2;
  v.check(c.mu == mu && c.nu == nu && c.missing == 2 * k + 1, "counting p",
          "mu=" + std::to_string(c.mu) + " nu=" + std::to_string(c.nu) + " missing=" + std::to_string(c.missing) +
              " expected " + std::to_string(mu) + "/" + std::to_string(nu) + "/" + std::to_string(2 * k + 1));

  int bad = 0;
  for (int kk = 0; kk <= 12; ++kk) {
    const auto s = count(MorseParams::from_p(kk + 1.0 / std::numbers::pi));
    bad += s.mu != (kk + 1) * (kk + 2) / 2 || s.nu != kk * (kk - 1) / 2 || s.missing != 2 * kk + 1;
  }
  v.check(bad == 0, "counting sweep", "k=0..12 mismatches=" + std::to_string(bad));
}

void verify_orthonormality(const MorseParams& params, const QuadratureGrid& grid, Verifier& v) {
  const Complex gamma_pairs[2][2] = {{kGammaAntisym, -kGammaAntisym},
                                     {Complex(std::cos(0.3), 0.0), Complex(0.0, std::sin(0.3))}};
  for (const auto& g : gamma_pairs) {
    const auto table = build_mu_basis(params, g[0], g[1]);
    std::vector<ScalarField2D> fields;
    for (const auto& s : table.mu) fields.push_back(mu_field(params, s));
    const auto gram = gram_matrix(fields, grid);
    const std::size_t n = fields.size();
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) worst = std::max(worst, std::abs(gram[i * n + j] - (i == j ? 1.0 : 0.0)));
    std::ostringstream name;
    name << "orthonormality mu gamma=(" << g[0] << "," << g[1] << ")";
    v.check(worst < 1e-6, name.str(), "max|G-I|=" + format_real(worst));
  }
  if (params.k < 2) return;
  const auto basis = build_nu_basis(params);
  const auto m = basis_matrices(make_partner_evaluator(params, basis), grid);
  double worst = 0.0;
  for (std::size_t i = 0; i < m.n; ++i)
    for (std::size_t j = 0; j < m.n; ++j) worst = std::max(worst, std::abs(m.at(m.gram, i, j) - (i == j ? 1.0 : 0.0)));
  v.check(worst < 1e-6, "orthonormality nu", "max|G-I|=" + format_real(worst));
}

void verify_norms(const MorseParams& params, const QuadratureGrid& grid, Verifier& v) {
  // Unit scales: the evaluator yields the unnormalized Q+ images.
  const auto pairs = admissible_partner_pairs(params);
  double worst = 0.0;
  int bad = 0;
  if (!pairs.empty()) {
    const auto norm_sq = norms_squared(PartnerBasisEvaluator(params, pairs, std::vector<double>(pairs.size(), 1.0)), grid);
    for (std::size_t j = 0; j < pairs.size(); ++j) {
      const double r = r_eigenvalue(params, pairs[j]);
      const double rel = std::abs(norm_sq[j] - r) / r;
      worst = std::max(worst, rel);
      bad += rel > 1e-5;
    }
  }
  v.check(bad == 0 && !pairs.empty(), "norms admissible",
          std::to_string(pairs.size()) + " pairs, max rel err=" + format_real(worst));

  std::vector<QuantumPair> adjacent;
  for (int m = 0; m < params.k; ++m) adjacent.push_back({m + 1, m});
  double worst_adjacent = 0.0;
  if (!adjacent.empty()) {
    for (double nsq : norms_squared(PartnerBasisEvaluator(params, adjacent, std::vector<double>(adjacent.size(), 1.0)), grid))
      worst_adjacent = std::max(worst_adjacent, std::sqrt(std::abs(nsq)));
  }
  v.check(worst_adjacent < 1e-6, "norms adjacent", "max norm=" + format_real(worst_adjacent));
}

void verify_isospectral(const MorseParams& params, Verifier& v) {
  if (params.k < 2) {
    v.check(false, "isospectral", "partner basis is empty");
    return;
  }
  double worst_res = 0.0, worst_ray = 0.0;
  for (const auto& s : build_nu_basis(params)) {
    const auto r = hamiltonian_residual(params, s.field, s.energy, HamiltonianKind::partner);
    worst_res = std::max(worst_res, r.residual);
    worst_ray = std::max(worst_ray, std::abs(r.rayleigh - s.energy) / std::abs(s.energy));
  }
  v.check(worst_res <= 5e-3, "isospectral residual", "max=" + format_real(worst_res));
  v.check(worst_ray <= 1e-4, "isospectral rayleigh", "max rel=" + format_real(worst_ray));
}

int cmd_verify(const RunConfig& config, const std::string& suite, std::ostream& out) {
  const auto params = MorseParams::from_p(config.p);
  Verifier v(out);
  const bool all = suite == "all";
  std::optional<QuadratureGrid> grid;
  auto get_grid = [&]() -> const QuadratureGrid& {
    if (!grid) grid = make_grid(params, config);
    return *grid;
  };
  if (all || suite == "counting") verify_counting(params, v);
  if (all || suite == "orthonormality") verify_orthonormality(params, get_grid(), v);
  if (all || suite == "norms") verify_norms(params, get_grid(), v);
  if (all || suite == "isospectral") verify_isospectral(params, v);
  out << (v.failures() == 0 ? "all checks passed" : std::to_string(v.failures()) + " check(s) failed") << '\n';
  return v.failures() == 0 ? kOk : kVerifyFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Supersymmetric partner of the 2D Morse oscillator", "susy-morse"};
  app.require_subcommand(1);
  app.fallthrough();

  std::optional<double> p;
  std::string config_path;
  std::vector<double> box;
  std::optional<int> nx, ny, panels, nodes;
  std::optional<std::string> output, format;
  app.add_option("-p,--p", p, "well depth parameter p (default 3 pi)");
  app.add_option("--config", config_path, "key=value file or JSON manifest")->check(CLI::ExistingFile);
  app.add_option("--box", box, "x_min x_max y_min y_max")->expected(4);
  app.add_option("--nx", nx, "density grid columns");
  app.add_option("--ny", ny, "density grid rows");
  app.add_option("--panels", panels, "quadrature panels over the core interval");
  app.add_option("--nodes", nodes, "Gauss-Legendre nodes per panel");
  app.add_option("-o,--output", output, "output path, - for stdout");
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  auto* spectrum = app.add_subcommand("spectrum", "ordered tables of S and the partner basis");
  auto* states = app.add_subcommand("states", "partner basis table with r eigenvalues");

  auto* density = app.add_subcommand("density", "probability density grid plus JSON manifest");
  std::string density_basis, density_arg;
  density->add_option("basis", density_basis, "mu, nu or coherent")->check(CLI::IsMember({"mu", "nu", "coherent"}));
  density->add_option("value", density_arg, "state index, or phi for coherent");

  auto* coherent = app.add_subcommand("coherent", "coherent-state expansion coefficients");
  double coherent_phi = 0.0;
  coherent->add_option("phi", coherent_phi, "real amplitude")->required();

  auto* uncertainty = app.add_subcommand("uncertainty", "x-quadrature variances over a phi sweep");
  double phi_min = 0.0, phi_max = 0.0;
  int steps = 0;
  uncertainty->add_option("phi_min", phi_min)->required();
  uncertainty->add_option("phi_max", phi_max)->required();
  uncertainty->add_option("steps", steps)->required();

  auto* verify = app.add_subcommand("verify", "run invariant checks");
  std::string suite = "all";
  verify->add_option("suite", suite)->check(CLI::IsMember({"counting", "orthonormality", "norms", "isospectral", "all"}));

  std::vector<const char*> argv{"susy-morse"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  RunConfig config;
  try {
    if (!config_path.empty()) load_config_file(config_path, config);
    if (p) config.p = *p;
    if (!box.empty()) config.box = {box[0], box[1], box[2], box[3]};
    if (nx) config.nx = *nx;
    if (ny) config.ny = *ny;
    if (panels) config.panels = *panels;
    if (nodes) config.nodes = *nodes;
    if (output) config.output = *output;
    if (format) config.format = *format == "json" ? OutputFormat::json : OutputFormat::csv;
    validate(config);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }

  try {
    if (*spectrum) return cmd_spectrum(config, out, err);
    if (*states) return cmd_states(config, out, err);
    if (*coherent) return cmd_coherent(config, coherent_phi, out);
    if (*uncertainty) return cmd_uncertainty(config, phi_min, phi_max, steps, out);
    if (*verify) return cmd_verify(config, suite, out);
    if (*density) {
      std::string basis_name = density_basis.empty() ? config.basis.value_or("") : density_basis;
      std::string arg = density_arg;
      if (arg.empty() && density_basis.empty()) {
        if (basis_name == "coherent" && config.phi) {
          arg = nlohmann::json(*config.phi).dump();
        } else if (config.index) {
          arg = std::to_string(*config.index);
        }
      }
      if (basis_name.empty() || arg.empty()) {
        err << "error: density needs a basis (mu|nu|coherent) and an index or phi\n";
        return kConfigError;
      }
      if (basis_name != "mu" && basis_name != "nu" && basis_name != "coherent") {
        err << "error: unknown basis '" << basis_name << "'\n";
        return kConfigError;
      }
      return cmd_density(config, basis_name, arg, out, err);
    }
  } catch (const CommandError& e) {
    err << "error: " << e.what() << '\n';
    return e.code;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kIndexError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return kConfigError;
}

}  // namespace susymorse::cli
