#pragma once

#include <compare>
#include <vector>

#include "susymorse/field.hpp"

namespace susymorse {

/// Morse parameters in units hbar = beta = m = 1. The potential depth is
/// V0 = nu^2 / 8 with nu = 2p + 1; p = k + eps with k = floor(p).
struct MorseParams {
  double p = 0.0;
  double nu = 1.0;
  int k = 0;
  double eps = 0.0;

  /// Throws std::domain_error unless p > 0 and finite.
  static MorseParams from_p(double p);

  [[nodiscard]] int level_count() const { return k + 1; }
};

struct QuantumPair {
  int n = 0;
  int m = 0;

  [[nodiscard]] QuantumPair swapped() const { return {m, n}; }
  friend auto operator<=>(const QuantumPair&, const QuantumPair&) = default;
};

/// Throws std::out_of_range unless 0 <= n, m <= k.
void check_pair(const MorseParams& params, QuantumPair pair);

/// V(x) = (nu^2/8)(e^{-2x} - 2 e^{-x}) and its derivative.
double potential1d(const MorseParams& params, double x);
double potential1d_dx(const MorseParams& params, double x);

/// 1D level energy -(p - n)^2 / 2.
double energy1d(const MorseParams& params, int n);

/// Normalized 1D bound state N_n e^{-xt/2} xt^{p-n} L_n^{2(p-n)}(xt), xt = nu e^{-x}.
double psi1d(const MorseParams& params, int n, double x);
/// Analytic d/dx of psi1d.
double psi1d_dx(const MorseParams& params, int n, double x);

/// Values and first three x-derivatives of every level n = 0..k at one point.
/// Second and third derivatives come from the eigenvalue equation
/// psi'' = 2 (V - e_n) psi, which holds exactly for these states.
struct LevelSample {
  double x = 0.0;
  std::vector<double> value;
  std::vector<double> d1;
  std::vector<double> d2;
  std::vector<double> d3;
};

/// Fills levels 0..max_level (all levels when max_level < 0).
void sample_levels(const MorseParams& params, double x, LevelSample& out, int max_level = -1);
LevelSample sample_levels(const MorseParams& params, double x, int max_level = -1);

/// Product state psi_n(x) psi_m(y), with analytic d/dx.
ScalarField2D psi2d(const MorseParams& params, QuantumPair pair);

/// E_{n,m} = -((p-n)^2 + (p-m)^2) / 2.
double energy(const MorseParams& params, QuantumPair pair);

/// eps_{n,m} = -((p-n)^2 + (p-m)^2) = 2 E_{n,m}.
double scaled_energy(const MorseParams& params, QuantumPair pair);

}  // namespace susymorse
