// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <algorithm>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "susymorse/coherent.hpp"
#include "susymorse/observables.hpp"
#include "susymorse/residual.hpp"
#include "susymorse/spectrum.hpp"
#include "susymorse/susy.hpp"

using namespace susymorse;
using Real100 = boost::multiprecision::cpp_bin_float_100;

namespace {

const MorseParams kP = MorseParams::from_p(3.0 * std::numbers::pi);
const Complex kG{1.0 / std::numbers::sqrt2, 0.0};

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

int failures = 0;

void criterion(int id, const std::string& name, double time_limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o{false, ""};
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool ok = o.pass;
  std::string timing = fmt("%.2fs", secs);
  if (time_limit_s > 0.0) {
    timing += fmt(" (limit %.0fs)", time_limit_s);
    ok = ok && secs < time_limit_s;
  }
  std::printf("%s [%d] %s: %s; %s\n", ok ? "PASS" : "FAIL", id, name.c_str(), o.detail.c_str(), timing.c_str());
  std::fflush(stdout);
  failures += ok ? 0 : 1;
}

const std::vector<NuState>& nu_basis() {
  static const std::vector<NuState> b = build_nu_basis(kP);
  return b;
}

const QuadratureGrid& grid() {
  static const QuadratureGrid g = QuadratureGrid::build(kP);
  return g;
}

Outcome counting() {
  const auto t = build_mu_basis(kP, kG, -kG);
  bool ok = t.counts.mu == 55 && t.counts.nu == 36 && t.counts.missing == 19 && 2 * kP.k + 1 == 19;
  for (int k = 0; k <= 12; ++k) {
    const auto s = build_mu_basis(MorseParams::from_p(k + 1.0 / std::numbers::pi), kG, -kG).counts;
    ok = ok && s.mu == (k + 1) * (k + 2) / 2 && s.nu == k * (k - 1) / 2 && s.missing == 1 + 2 * k;
  }
  return {ok, "|S|=" + std::to_string(t.counts.mu) + " |S~|=" + std::to_string(t.counts.nu) +
                  " diff=" + std::to_string(t.counts.missing) + ", sweep k=0..12"};
}

Outcome ordering() {
  const auto t = build_mu_basis(kP, kG, -kG);
  const std::vector<QuantumPair> mu_head{{0, 0}, {1, 0}, {2, 0}, {1, 1}};
  const std::vector<QuantumPair> nu_head{{2, 0}, {3, 0}, {4, 0}, {3, 1}};
  bool ok = t.mu.size() >= 4 && t.partner_pairs.size() >= 4;
  for (std::size_t i = 0; ok && i < 4; ++i) ok = t.mu[i].pair == mu_head[i] && t.partner_pairs[i] == nu_head[i];
  ok = ok && t.partner_pairs.back() == QuantumPair{9, 7};
  const auto& last = t.partner_pairs.back();
  return {ok, "nu tail (" + std::to_string(last.n) + "," + std::to_string(last.m) + ")"};
}

Outcome superalgebra_norms() {
  // Unit scales: the evaluator yields the unnormalized Q+ images.
  double worst = 0.0, worst_adjacent = 0.0;
  const auto pairs = admissible_partner_pairs(kP);
  const auto norm_sq = norms_squared(PartnerBasisEvaluator(kP, pairs, std::vector<double>(pairs.size(), 1.0)), grid());
  for (std::size_t j = 0; j < pairs.size(); ++j) {
    const double r = r_eigenvalue(kP, pairs[j]);
    worst = std::max(worst, std::abs(norm_sq[j] - r) / r);
  }
  std::vector<QuantumPair> adjacent;
  for (int m = 0; m < kP.k; ++m) adjacent.push_back({m + 1, m});
  for (double nsq : norms_squared(PartnerBasisEvaluator(kP, adjacent, std::vector<double>(adjacent.size(), 1.0)), grid()))
    worst_adjacent = std::max(worst_adjacent, std::sqrt(std::abs(nsq)));
  return {pairs.size() == 36 && worst <= 1e-5 && worst_adjacent < 1e-6,
          "36 pairs max rel err " + fmt("%.3e", worst) + ", adjacent max norm " + fmt("%.3e", worst_adjacent)};
}

Outcome isospectrality() {
  double worst_res = 0.0, worst_ray = 0.0;
  for (const auto& s : nu_basis()) {
    const auto r = hamiltonian_residual(kP, s.field, s.energy, HamiltonianKind::partner);
    worst_res = std::max(worst_res, r.residual);
    worst_ray = std::max(worst_ray, std::abs(r.rayleigh - s.energy) / std::abs(s.energy));
  }
  return {worst_res <= 5e-3 && worst_ray <= 1e-4,
          "max residual " + fmt("%.3e", worst_res) + ", max Rayleigh rel err " + fmt("%.3e", worst_ray)};
}

Outcome orthonormality() {
  double worst_mu = 0.0;
  const Complex gammas[][2] = {{kG, -kG}, {kG, kG}, {Complex(0.6, 0.0), Complex(0.0, 0.8)}};
  for (const auto& g : gammas) {
    const auto t = build_mu_basis(kP, g[0], g[1]);
    std::vector<ScalarField2D> fields;
    for (const auto& s : t.mu) fields.push_back(mu_field(kP, s));
    const auto gram = gram_matrix(fields, grid());
    const std::size_t n = fields.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        worst_mu = std::max(worst_mu, std::abs(gram[i * n + j] - (i == j ? 1.0 : 0.0)));
  }
  const auto m = basis_matrices(make_partner_evaluator(kP, nu_basis()), grid());
  double worst_nu = 0.0;
  for (std::size_t i = 0; i < m.n; ++i)
    for (std::size_t j = 0; j < m.n; ++j)
      worst_nu = std::max(worst_nu, std::abs(m.at(m.gram, i, j) - (i == j ? 1.0 : 0.0)));
  return {worst_mu <= 1e-6 && worst_nu <= 1e-6,
          "S (3 gamma choices) max|G-I| " + fmt("%.3e", worst_mu) + ", S~ max|G-I| " + fmt("%.3e", worst_nu)};
}

Outcome coherent_defect_check() {
  const auto spec = LadderSpec::from_partner_basis(kP, nu_basis());
  double worst = 0.0;
  std::string detail;
  for (double phi : {0.5, 1.0, 2.0, 5.0}) {
    double norm = 0.0;
    for (const auto& c : coherent_coefficients(spec, phi)) norm += std::norm(c);
    const double closed = coherent_defect_closed_form(spec, phi, norm);
    const Real100 measured = coherent_defect_direct<Real100>(spec, phi);
    const double rel = static_cast<double>(abs(measured - closed) / closed);
    worst = std::max(worst, rel);
    detail += fmt(" phi=%.1f:", phi) + fmt("%.3e", closed);
  }
  return {worst <= 1e-10, "max rel err " + fmt("%.3e", worst) + ";" + detail};
}

Outcome squeezing() {
  const auto spec = LadderSpec::from_partner_basis(kP, nu_basis());
  const auto ev = make_partner_evaluator(kP, nu_basis());
  const auto coarse = basis_matrices(ev, grid());
  QuadratureOptions doubled;
  doubled.refine = 2;
  const auto fine = basis_matrices(ev, QuadratureGrid::build(kP, doubled));

  double min_product = INFINITY, worst_change = 0.0;
  int window = 0;
  double window_lo = NAN, window_hi = NAN;
  for (int i = 0; i < 61; ++i) {
    const double phi = 6.0 * i / 60;
    auto c = coherent_coefficients(spec, phi);
    double norm = 0.0;
    for (const auto& v : c) norm += std::norm(v);
    for (auto& v : c) v /= std::sqrt(norm);
    const auto ma = moments_from_coefficients(coarse, c);
    const auto mb = moments_from_coefficients(fine, c);
    const auto r = uncertainty_from_moments(ma, phi);
    min_product = std::min(min_product, r.product);
    if (r.var_q < 0.5 && r.var_p > 0.5) {
      if (!window++) window_lo = phi;
      window_hi = phi;
    }
    const auto rb = uncertainty_from_moments(mb, phi);
    for (double d : {ma.mean_q - mb.mean_q, ma.mean_q2 - mb.mean_q2, std::abs(ma.mean_p - mb.mean_p),
                     ma.mean_p2 - mb.mean_p2, r.var_q - rb.var_q, r.var_p - rb.var_p, r.product - rb.product}) {
      worst_change = std::max(worst_change, std::abs(d));
    }
  }
  return {min_product > 0.25 && window > 0 && worst_change < 1e-6,
          "min product " + fmt("%.6f", min_product) + ", squeezed rows " + std::to_string(window) + " in phi [" +
              fmt("%.1f", window_lo) + "," + fmt("%.1f", window_hi) + "], doubling change " +
              fmt("%.3e", worst_change)};
}

Outcome two_lobes() {
  const Box box{-4.0, 25.0, -4.0, 25.0};
  bool ok = true;
  std::string detail;
  for (double phi : {0.001, 5.0}) {
    const auto state = coherent_state(kP, nu_basis(), phi);
    const auto d = density_grid(state.field, box, 400, 400);
    const double diag = max_near_diagonal(d, 1e-8);
    const auto peaks = global_maxima(d);
    const bool mirror = peaks.size() == 2 && peaks[0].ix == peaks[1].iy && peaks[0].iy == peaks[1].ix;
    const double top = peaks.empty() ? 0.0 : peaks[0].value;
    ok = ok && diag <= 1e-20 && top > 0.0 && mirror;
    detail += fmt(" phi=%g:", phi) + " diag " + fmt("%.2e", diag) + " max " + fmt("%.3e", top) + " peaks " +
              std::to_string(peaks.size()) + (mirror ? " mirrored" : "");
  }
  return {ok, detail};
}

}  // namespace

int main() {
  criterion(1, "counting identities", 1.0, counting);
  criterion(2, "ordering reproduction", 1.0, ordering);
  criterion(3, "superalgebra norm check", 120.0, superalgebra_norms);
  criterion(4, "isospectrality", 300.0, isospectrality);
  criterion(5, "orthonormality", 0.0, orthonormality);
  criterion(6, "coherent-state defect", 0.0, coherent_defect_check);
  criterion(7, "squeezing properties", 0.0, squeezing);
  criterion(8, "two-lobe separation", 0.0, two_lobes);
  std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
