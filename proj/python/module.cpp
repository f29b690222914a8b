#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <numbers>
#include <sstream>

#include "susymorse/cli.hpp"
#include "susymorse/coherent.hpp"
#include "susymorse/observables.hpp"
#include "susymorse/spectrum.hpp"
#include "susymorse/specfun.hpp"
#include "susymorse/susy.hpp"

namespace py = pybind11;
using namespace susymorse;

namespace {

const Complex kG{1.0 / std::numbers::sqrt2, 0.0};

Box to_box(const std::vector<double>& b) {
  if (b.size() != 4) throw py::value_error("box needs four numbers: x_min, x_max, y_min, y_max");
  return {b[0], b[1], b[2], b[3]};
}

py::array_t<double> to_array(const Grid2D<double>& g) {
  py::array_t<double> out({g.ny(), g.nx()});
  std::copy(g.values.begin(), g.values.end(), out.mutable_data());
  return out;
}

ScalarField2D pick_state(const MorseParams& params, const std::string& basis, double value) {
  if (basis == "coherent") return coherent_state(params, build_nu_basis(params), Complex(value, 0.0)).field;
  const auto index = static_cast<long long>(value);
  if (basis == "mu") {
    const auto t = build_mu_basis(params, kG, -kG);
    if (index < 0 || index >= static_cast<long long>(t.mu.size())) throw py::index_error("mu index out of range");
    return mu_field(params, t.mu[index]);
  }
  if (basis == "nu") {
    const auto b = build_nu_basis(params);
    if (index < 0 || index >= static_cast<long long>(b.size())) throw py::index_error("nu index out of range");
    return b[index].field;
  }
  throw py::value_error("basis must be mu, nu or coherent");
}

}  // namespace

PYBIND11_MODULE(_susymorse, m) {
  m.doc() = "2D Morse oscillator, its supersymmetric partner and coherent states.";

  py::register_exception<DegeneracyCollision>(m, "DegeneracyCollision", PyExc_RuntimeError);
  py::register_exception<EmptyBasis>(m, "EmptyBasis", PyExc_RuntimeError);
  py::register_exception<NormalizationError>(m, "NormalizationError", PyExc_RuntimeError);

  py::class_<MorseParams>(m, "MorseParams")
      .def_static("from_p", &MorseParams::from_p, py::arg("p"))
      .def_readonly("p", &MorseParams::p)
      .def_readonly("nu", &MorseParams::nu)
      .def_readonly("k", &MorseParams::k)
      .def_readonly("eps", &MorseParams::eps)
      .def_property_readonly("level_count", &MorseParams::level_count)
      .def("__repr__", [](const MorseParams& p) {
        std::ostringstream os;
        os << "MorseParams(p=" << p.p << ", k=" << p.k << ")";
        return os.str();
      });

  m.def("laguerre", &laguerre, py::arg("n"), py::arg("alpha"), py::arg("z"));
  m.def("log_gamma", &log_gamma, py::arg("x"));
  m.def(
      "psi1d", [](double p, int n, double x) { return psi1d(MorseParams::from_p(p), n, x); }, py::arg("p"),
      py::arg("n"), py::arg("x"));
  m.def(
      "energy", [](double p, int n, int mm) { return energy(MorseParams::from_p(p), {n, mm}); }, py::arg("p"),
      py::arg("n"), py::arg("m"));
  m.def(
      "scaled_spectrum", [](double p, int n, int mm) { return scaled_spectrum(MorseParams::from_p(p), {n, mm}); },
      py::arg("p"), py::arg("n"), py::arg("m"));
  m.def(
      "r_eigenvalue", [](double p, int n, int mm) { return r_eigenvalue(MorseParams::from_p(p), {n, mm}); },
      py::arg("p"), py::arg("n"), py::arg("m"));

  m.def(
      "counts",
      [](double p) {
        const auto c = build_mu_basis(MorseParams::from_p(p), kG, -kG).counts;
        return py::dict(py::arg("mu") = c.mu, py::arg("nu") = c.nu, py::arg("missing") = c.missing);
      },
      py::arg("p"));

  m.def(
      "mu_basis",
      [](double p, Complex gamma1, Complex gamma2) {
        std::vector<std::tuple<int, int, int, double>> rows;
        for (const auto& s : build_mu_basis(MorseParams::from_p(p), gamma1, gamma2).mu) {
          rows.emplace_back(s.index, s.pair.n, s.pair.m, s.energy);
        }
        return rows;
      },
      py::arg("p"), py::arg("gamma1") = kG, py::arg("gamma2") = -kG,
      "(index, n, m, energy) rows in increasing energy.");

  m.def(
      "partner_pairs",
      [](double p) {
        std::vector<std::pair<int, int>> out;
        for (const auto& pr : admissible_partner_pairs(MorseParams::from_p(p))) out.emplace_back(pr.n, pr.m);
        return out;
      },
      py::arg("p"));

  m.def(
      "partner_state",
      [](double p, int index, py::array_t<double> x, py::array_t<double> y) {
        const auto params = MorseParams::from_p(p);
        const auto basis = build_nu_basis(params);
        if (index < 0 || index >= static_cast<int>(basis.size())) throw py::index_error("nu index out of range");
        const auto& field = basis[index].field;
        return py::vectorize([&](double a, double b) { return field(a, b).real(); })(x, y);
      },
      py::arg("p"), py::arg("index"), py::arg("x"), py::arg("y"), "Normalized partner eigenstate at (x, y).");

  m.def(
      "coherent_coefficients",
      [](double p, Complex phi) {
        const auto params = MorseParams::from_p(p);
        const auto spec = LadderSpec::from_partner_basis(params, build_nu_basis(params));
        return coherent_coefficients(spec, phi);
      },
      py::arg("p"), py::arg("phi"), "Unnormalized c_n = phi^n / sqrt([x_n]!).");

  m.def(
      "coherent_defect",
      [](double p, Complex phi) {
        const auto params = MorseParams::from_p(p);
        const auto spec = LadderSpec::from_partner_basis(params, build_nu_basis(params));
        double norm = 0.0;
        for (const auto& c : coherent_coefficients(spec, phi)) norm += std::norm(c);
        return py::make_tuple(coherent_defect_direct<double>(spec, phi), coherent_defect_closed_form(spec, phi, norm));
      },
      py::arg("p"), py::arg("phi"), "(measured in double precision, closed form).");

  m.def(
      "uncertainty",
      [](double p, std::vector<double> phis, int panels, int nodes) {
        const auto params = MorseParams::from_p(p);
        const auto basis = build_nu_basis(params);
        const auto spec = LadderSpec::from_partner_basis(params, basis);
        py::array_t<double> out({phis.size(), std::size_t{4}});
        auto view = out.mutable_unchecked<2>();
        {
          py::gil_scoped_release release;
          QuadratureOptions q;
          q.core_panels = panels;
          q.nodes_per_panel = nodes;
          const auto mats = basis_matrices(make_partner_evaluator(params, basis), QuadratureGrid::build(params, q));
          for (std::size_t i = 0; i < phis.size(); ++i) {
            auto c = coherent_coefficients(spec, phis[i]);
            double norm = 0.0;
            for (const auto& v : c) norm += std::norm(v);
            for (auto& v : c) v /= std::sqrt(norm);
            const auto r = uncertainty_from_moments(moments_from_coefficients(mats, c), phis[i]);
            view(i, 0) = r.phi;
            view(i, 1) = r.var_q;
            view(i, 2) = r.var_p;
            view(i, 3) = r.product;
          }
        }
        return out;
      },
      py::arg("p"), py::arg("phis"), py::arg("panels") = 24, py::arg("nodes") = 16,
      "Rows (phi, varQ, varP, product) for real phi.");

  m.def(
      "density",
      [](double p, const std::string& basis, double value, std::vector<double> box, int nx, int ny) {
        const auto params = MorseParams::from_p(p);
        const auto field = pick_state(params, basis, value);
        Grid2D<double> g;
        {
          py::gil_scoped_release release;
          g = density_grid(field, to_box(box), nx, ny);
        }
        return py::make_tuple(py::cast(g.xs), py::cast(g.ys), to_array(g));
      },
      py::arg("p"), py::arg("basis"), py::arg("value"), py::arg("box") = std::vector<double>{-4, 25, -4, 25},
      py::arg("nx") = 400, py::arg("ny") = 400, "(xs, ys, density[ny, nx]).");

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command-line front end in-process: (exit code, stdout, stderr).");
}
