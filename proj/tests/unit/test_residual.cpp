#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "susymorse/residual.hpp"
#include "susymorse/susy.hpp"

using namespace susymorse;

namespace {
const MorseParams kP = MorseParams::from_p(3.0 * std::numbers::pi);
}

TEST_CASE("separable eigenstates have small residuals") {
  ResidualOptions opt;
  opt.points = 256;
  for (QuantumPair pr : {QuantumPair{0, 0}, QuantumPair{3, 5}}) {
    const auto r = hamiltonian_residual(kP, psi2d(kP, pr), energy(kP, pr), HamiltonianKind::initial, opt);
    CHECK(r.residual < 1e-4);
    CHECK(r.rayleigh == doctest::Approx(energy(kP, pr)).epsilon(1e-6));
  }
}

TEST_CASE("residual falls with stencil order") {
  const auto basis = build_nu_basis(kP);
  ResidualOptions opt;
  opt.points = 256;
  double last = INFINITY;
  for (int order : {2, 4, 6, 8}) {
    opt.stencil_order = order;
    const auto r = hamiltonian_residual(kP, basis[4].field, basis[4].energy, HamiltonianKind::partner, opt);
    CHECK(r.residual < last);
    last = r.residual;
  }
  CHECK(last < 5e-3);
}

TEST_CASE("wrong energy is detected") {
  const auto basis = build_nu_basis(kP);
  ResidualOptions opt;
  opt.points = 192;
  const auto good = hamiltonian_residual(kP, basis[0].field, basis[0].energy, HamiltonianKind::partner, opt);
  const auto bad = hamiltonian_residual(kP, basis[0].field, basis[0].energy + 1.0, HamiltonianKind::partner, opt);
  CHECK(bad.residual > 100 * good.residual);
  CHECK(bad.rayleigh == good.rayleigh);
}

TEST_CASE("option validation") {
  ResidualOptions opt;
  opt.stencil_order = 3;
  CHECK_THROWS_AS(hamiltonian_residual(kP, psi2d(kP, {0, 0}), 0.0, HamiltonianKind::initial, opt),
                  std::invalid_argument);
  opt.stencil_order = 8;
  opt.points = 8;
  CHECK_THROWS_AS(hamiltonian_residual(kP, psi2d(kP, {0, 0}), 0.0, HamiltonianKind::initial, opt),
                  std::invalid_argument);
}
