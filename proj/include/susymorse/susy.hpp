#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "susymorse/field.hpp"
#include "susymorse/morse.hpp"

namespace susymorse {

/// No bound partner states exist (k < 2).
class EmptyBasis : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Below this |x - y| the coth((x-y)/2) terms are replaced by their limit.
inline constexpr double kDiagonalSeriesCutoff = 1e-6;

/// Eigenvalue of R = Q-Q+ on the antisymmetric combination of (n, m):
/// ((m-n)^2 - 1)((2p-m-n)^2 - 1) / 2.
double r_eigenvalue(const MorseParams& params, QuantumPair pair);

/// Q+ applied to the antisymmetric, unit-norm combination
/// (psi_{n,m} - psi_{m,n}) / sqrt(2), n > m. Unnormalized.
///
/// Q+ = sqrt(2) (-H_x + H_y + D+) with
/// D+ = coth(u/2)/2 - ((d_x - d_y) + coth(u/2)(d_x + d_y))/2, u = x - y.
/// The overall sqrt(2) makes |Q+ mu|^2 = r_{n,m} exactly; any multiple of Q+
/// intertwines H and the partner Hamiltonian equally well.
///
/// -H_x + H_y is replaced by 1D eigenvalues, D+ uses analytic derivatives.
/// Throws std::invalid_argument unless n > m.
ScalarField2D apply_qplus(const MorseParams& params, QuantumPair pair);

/// Evaluates a set of partner fields scale_j * Q+[(psi_{n,m} - psi_{m,n})/sqrt 2]
/// and their x-derivatives from per-axis level samples, so tensor grids
/// only evaluate 1D states once per node.
class PartnerBasisEvaluator {
 public:
  PartnerBasisEvaluator(const MorseParams& params, std::vector<QuantumPair> pairs, std::vector<double> scales);

  [[nodiscard]] std::size_t size() const { return pairs_.size(); }
  [[nodiscard]] const MorseParams& params() const { return params_; }
  [[nodiscard]] const std::vector<QuantumPair>& pairs() const { return pairs_; }
  /// Highest 1D level any pair needs; LevelSamples must cover it.
  [[nodiscard]] int max_level() const { return max_level_; }

  /// values[j] (and dx[j] when dx is non-empty) at (at_x.x, at_y.x).
  void evaluate(const LevelSample& at_x, const LevelSample& at_y, std::span<double> values,
                std::span<double> dx = {}) const;

  /// Convenience overload sampling the levels itself.
  void evaluate(double x, double y, std::span<double> values, std::span<double> dx = {}) const;

 private:
  MorseParams params_;
  std::vector<QuantumPair> pairs_;
  std::vector<double> scales_;
  int max_level_ = 0;
};

/// Normalized eigenstate of the partner Hamiltonian.
struct NuState {
  int index = 0;
  QuantumPair source;
  int mu_index = 0;               ///< index of the generating state in S
  double energy = 0.0;            ///< E_{n,m}
  double norm_sq_analytic = 0.0;  ///< r_{n,m}
  ScalarField2D field;            ///< Q+ mu / sqrt(r_{n,m})
};

/// Partner basis in energy order. Throws EmptyBasis when k < 2.
std::vector<NuState> build_nu_basis(const MorseParams& params);

/// Evaluator over a whole partner basis (normalized fields, same order).
PartnerBasisEvaluator make_partner_evaluator(const MorseParams& params, const std::vector<NuState>& basis);

/// Partner potential V(x) + V(y) + 1 / (2 sinh^2((x - y)/2)).
double partner_potential(const MorseParams& params, double x, double y);

}  // namespace susymorse
