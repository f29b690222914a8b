#pragma once

#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "susymorse/field.hpp"
#include "susymorse/morse.hpp"

namespace susymorse {

/// Two distinct unordered pairs share an energy within the tie tolerance,
/// i.e. the spectrum is more than doubly degenerate for this p.
class DegeneracyCollision : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kDegeneracyTolerance = 1e-9;

enum class MuKind { diagonal, mixed };

/// Member of the non-degenerate initial basis S. Canonical form n >= m;
/// gamma1 multiplies |n,m> and gamma2 multiplies |m,n> for mixed states.
struct MuState {
  int index = 0;
  MuKind kind = MuKind::diagonal;
  QuantumPair pair;
  Complex gamma1{1.0, 0.0};
  Complex gamma2{0.0, 0.0};
  double energy = 0.0;
};

struct SpectrumCounts {
  int mu = 0;
  int nu = 0;
  int missing = 0;
};

struct SpectrumTable {
  std::vector<MuState> mu;
  std::vector<QuantumPair> partner_pairs;
  SpectrumCounts counts;
};

/// Builds S ordered by increasing energy. Throws std::invalid_argument when
/// |gamma1|^2 + |gamma2|^2 differs from 1 by more than 1e-12 and
/// DegeneracyCollision when two unordered pairs tie within 1e-9.
SpectrumTable build_mu_basis(const MorseParams& params, Complex gamma1, Complex gamma2);

/// Pairs with n > m + 1, sorted by increasing energy. Empty when k < 2.
std::vector<QuantumPair> admissible_partner_pairs(const MorseParams& params);

/// -[(k-n)^2 + (k-m)^2 + 2 eps (2k - n - m)]: the scaled spectrum with the
/// constant -2 eps^2 removed.
double scaled_spectrum(const MorseParams& params, QuantumPair pair);

/// Product-state expansion of a mu state: (pair, coefficient) terms.
std::vector<std::pair<QuantumPair, Complex>> mu_components(const MuState& state);

/// Wavefunction of a mu state as a sum of product states.
ScalarField2D mu_field(const MorseParams& params, const MuState& state);

}  // namespace susymorse
