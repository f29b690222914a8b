#include "susymorse/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace susymorse {

namespace {

// Unordered pairs (n >= m) sorted by physical energy.
std::vector<QuantumPair> ordered_pairs(const MorseParams& params) {
  std::vector<QuantumPair> pairs;
  for (int n = 0; n <= params.k; ++n) {
    for (int m = 0; m <= n; ++m) pairs.push_back({n, m});
  }
  std::stable_sort(pairs.begin(), pairs.end(), [&](QuantumPair a, QuantumPair b) {
    return energy(params, a) < energy(params, b);
  });
  return pairs;
}

}  // namespace

SpectrumTable build_mu_basis(const MorseParams& params, Complex gamma1, Complex gamma2) {
  const double weight = std::norm(gamma1) + std::norm(gamma2);
  if (std::abs(weight - 1.0) > 1e-12) {
    throw std::invalid_argument("build_mu_basis: |gamma1|^2 + |gamma2|^2 must equal 1");
  }

  const auto pairs = ordered_pairs(params);
  for (std::size_t i = 1; i < pairs.size(); ++i) {
    const double gap = scaled_energy(params, pairs[i]) - scaled_energy(params, pairs[i - 1]);
    if (gap < kDegeneracyTolerance) {
      std::ostringstream msg;
      msg << "pairs (" << pairs[i - 1].n << "," << pairs[i - 1].m << ") and (" << pairs[i].n << "," << pairs[i].m
          << ") are degenerate within " << kDegeneracyTolerance << " at p=" << params.p;
      throw DegeneracyCollision(msg.str());
    }
  }

  SpectrumTable table;
  table.mu.reserve(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    MuState state;
    state.index = static_cast<int>(i);
    state.pair = pairs[i];
    state.energy = energy(params, pairs[i]);
    if (pairs[i].n == pairs[i].m) {
      state.kind = MuKind::diagonal;
    } else {
      state.kind = MuKind::mixed;
      state.gamma1 = gamma1;
      state.gamma2 = gamma2;
    }
    table.mu.push_back(state);
  }
  table.partner_pairs = admissible_partner_pairs(params);
  table.counts.mu = static_cast<int>(table.mu.size());
  table.counts.nu = static_cast<int>(table.partner_pairs.size());
  table.counts.missing = table.counts.mu - table.counts.nu;
  return table;
}

std::vector<QuantumPair> admissible_partner_pairs(const MorseParams& params) {
  std::vector<QuantumPair> out;
  for (QuantumPair pair : ordered_pairs(params)) {
    if (pair.n > pair.m + 1) out.push_back(pair);
  }
  return out;
}

double scaled_spectrum(const MorseParams& params, QuantumPair pair) {
  check_pair(params, pair);
  const double a = params.k - pair.n;
  const double b = params.k - pair.m;
  return -(a * a + b * b + 2.0 * params.eps * (2.0 * params.k - pair.n - pair.m));
}

std::vector<std::pair<QuantumPair, Complex>> mu_components(const MuState& state) {
  if (state.kind == MuKind::diagonal) return {{state.pair, Complex{1.0, 0.0}}};
  return {{state.pair, state.gamma1}, {state.pair.swapped(), state.gamma2}};
}

ScalarField2D mu_field(const MorseParams& params, const MuState& state) {
  std::vector<std::pair<ScalarField2D, Complex>> terms;
  for (const auto& [pair, coeff] : mu_components(state)) terms.emplace_back(psi2d(params, pair), coeff);
  auto value = [terms](double x, double y) {
    Complex sum{};
    for (const auto& [field, coeff] : terms) sum += coeff * field(x, y);
    return sum;
  };
  auto dx = [terms](double x, double y) {
    Complex sum{};
    for (const auto& [field, coeff] : terms) sum += coeff * field.dx(x, y);
    return sum;
  };
  return ScalarField2D(value, dx);
}

}  // namespace susymorse
