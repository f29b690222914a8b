#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

#include "doctest.h"
#include "susymorse/spectrum.hpp"

using namespace susymorse;

namespace {

const MorseParams kP = MorseParams::from_p(3.0 * std::numbers::pi);
const Complex kG{1.0 / std::numbers::sqrt2, 0.0};

}  // namespace

TEST_CASE("basis sizes over k = 0..12") {
  for (int k = 0; k <= 12; ++k) {
    const auto params = MorseParams::from_p(k + 1.0 / std::numbers::pi);
    const auto t = build_mu_basis(params, kG, -kG);
    CHECK(t.counts.mu == (k + 1) * (k + 2) / 2);
    CHECK(t.counts.nu == k * (k - 1) / 2);
    CHECK(t.counts.missing == 2 * k + 1);
    CHECK(t.mu.size() == static_cast<std::size_t>(t.counts.mu));
    CHECK(admissible_partner_pairs(params).size() == static_cast<std::size_t>(t.counts.nu));
  }
}

TEST_CASE("ordering at p = 3 pi") {
  const auto t = build_mu_basis(kP, kG, -kG);
  REQUIRE(t.mu.size() == 55);
  const QuantumPair head[] = {{0, 0}, {1, 0}, {2, 0}, {1, 1}};
  for (int i = 0; i < 4; ++i) CHECK(t.mu[i].pair == head[i]);
  CHECK(t.mu[0].kind == MuKind::diagonal);
  CHECK(t.mu[1].kind == MuKind::mixed);

  const auto nu = t.partner_pairs;
  REQUIRE(nu.size() == 36);
  const QuantumPair nu_head[] = {{2, 0}, {3, 0}, {4, 0}, {3, 1}};
  for (int i = 0; i < 4; ++i) CHECK(nu[i] == nu_head[i]);
  CHECK(nu.back() == QuantumPair{9, 7});

  for (std::size_t i = 1; i < t.mu.size(); ++i) {
    CHECK(t.mu[i].energy > t.mu[i - 1].energy);
    CHECK(t.mu[i].index == static_cast<int>(i));
    CHECK(t.mu[i].pair.n >= t.mu[i].pair.m);
  }
  for (const auto& pr : nu) CHECK(pr.n > pr.m + 1);
}

TEST_CASE("scaled spectrum values") {
  CHECK(scaled_spectrum(kP, {2, 0}) == doctest::Approx(-143.5928947446).epsilon(1e-11));
  // Differs from 2E only by the constant -2 eps^2.
  for (const auto& pr : admissible_partner_pairs(kP)) {
    CHECK(scaled_spectrum(kP, pr) == doctest::Approx(scaled_energy(kP, pr) + 2 * kP.eps * kP.eps));
  }
}

TEST_CASE("rounded eps reproduces the quoted level") {
  MorseParams rounded = kP;
  rounded.eps = 0.42478;
  CHECK(scaled_spectrum(rounded, {2, 0}) == doctest::Approx(-143.5929).epsilon(1e-6));
}

TEST_CASE("gamma normalization is enforced") {
  CHECK_THROWS_AS(build_mu_basis(kP, Complex(1.0, 0.0), Complex(1.0, 0.0)), std::invalid_argument);
  CHECK_NOTHROW(build_mu_basis(kP, Complex(0.6, 0.0), Complex(0.0, 0.8)));
}

TEST_CASE("integer p is more than doubly degenerate") {
  // (6,1) and (3,2) share (p-n)^2 + (p-m)^2 = 25 at p = 6.
  CHECK_THROWS_AS(build_mu_basis(MorseParams::from_p(6.0), kG, -kG), DegeneracyCollision);
}

TEST_CASE("small p leaves no partner pairs") {
  const auto params = MorseParams::from_p(1.7);
  CHECK(admissible_partner_pairs(params).empty());
  const auto t = build_mu_basis(params, kG, -kG);
  CHECK(t.counts.mu == 3);
  CHECK(t.counts.nu == 0);
}

TEST_CASE("mu components and fields") {
  const Complex g1(0.6, 0.0), g2(0.0, 0.8);
  const auto t = build_mu_basis(kP, g1, g2);
  const auto diag = mu_components(t.mu[0]);
  REQUIRE(diag.size() == 1);
  CHECK(diag[0].first == QuantumPair{0, 0});

  const MuState& mixed = t.mu[1];
  const auto comps = mu_components(mixed);
  REQUIRE(comps.size() == 2);
  CHECK(comps[0].first == QuantumPair{1, 0});
  CHECK(comps[0].second == g1);
  CHECK(comps[1].first == QuantumPair{0, 1});
  CHECK(comps[1].second == g2);

  const auto f = mu_field(kP, mixed);
  const double x = 0.3, y = 1.1;
  const Complex expected = g1 * psi1d(kP, 1, x) * psi1d(kP, 0, y) + g2 * psi1d(kP, 0, x) * psi1d(kP, 1, y);
  CHECK(std::abs(f(x, y) - expected) < 1e-14);
}

TEST_CASE("swapping gammas mirrors the field") {
  const Complex g1(0.6, 0.0), g2(0.0, 0.8);
  const auto a = build_mu_basis(kP, g1, g2);
  const auto b = build_mu_basis(kP, g2, g1);
  for (std::size_t i = 0; i < a.mu.size(); i += 7) {
    const auto fa = mu_field(kP, a.mu[i]);
    const auto fb = mu_field(kP, b.mu[i]);
    for (double x : {-0.5, 0.4, 2.0}) {
      for (double y : {-0.3, 1.2}) CHECK(std::abs(fa(x, y) - fb(y, x)) < 1e-13);
    }
  }
}

TEST_CASE("each unordered pair appears once") {
  const auto t = build_mu_basis(kP, kG, -kG);
  std::set<QuantumPair> seen;
  for (const auto& s : t.mu) CHECK(seen.insert(s.pair).second);
}
