#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "susymorse/field.hpp"
#include "susymorse/morse.hpp"
#include "susymorse/susy.hpp"

namespace susymorse {

/// Ladder strengths f(i) on the partner basis and the generalized factorials
/// [x_n]! = f(1) ... f(n), stored as logarithms.
class LadderSpec {
 public:
  /// Requires f(0) == 0 and strictly increasing strengths; throws
  /// std::invalid_argument otherwise.
  explicit LadderSpec(std::vector<double> strengths);

  /// f(i) = scaled_spectrum(nu_i) - scaled_spectrum(nu_0).
  static LadderSpec from_partner_basis(const MorseParams& params, const std::vector<NuState>& basis);

  [[nodiscard]] std::size_t size() const { return strengths_.size(); }
  [[nodiscard]] double f(std::size_t i) const { return strengths_.at(i); }
  [[nodiscard]] const std::vector<double>& strengths() const { return strengths_; }
  [[nodiscard]] double log_factorial(std::size_t n) const { return log_factorials_.at(n); }

 private:
  std::vector<double> strengths_;
  std::vector<double> log_factorials_;
};

/// B- on a coefficient vector: out[i-1] = sqrt(f(i)) in[i]. The top slot
/// receives nothing (finite chain).
std::vector<Complex> ladder_lower(const LadderSpec& spec, std::span<const Complex> coeffs);

/// B+ on a coefficient vector: out[i+1] = sqrt(f(i+1)) in[i]; the top state
/// is annihilated.
std::vector<Complex> ladder_raise(const LadderSpec& spec, std::span<const Complex> coeffs);

/// c_n = phi^n / sqrt([x_n]!), n = 0..size-1, evaluated in log space.
std::vector<Complex> coherent_coefficients(const LadderSpec& spec, Complex phi);

struct CoherentState {
  Complex phi;
  std::vector<Complex> coefficients;  ///< unnormalized c_n
  double normalization = 1.0;         ///< N(phi) = sum |c_n|^2
  ScalarField2D field;                ///< sum c_n nu_n / sqrt(N(phi))

  [[nodiscard]] std::vector<Complex> normalized_coefficients() const;
};

CoherentState coherent_state(const MorseParams& params, const std::vector<NuState>& basis, Complex phi);

/// ||B-|phi> - phi|phi>|| computed from the coefficient vectors.
double coherent_defect(const LadderSpec& spec, const CoherentState& state);

/// |phi|^{n_max+1} / sqrt(N(phi) [x_{n_max}]!).
double coherent_defect_closed_form(const LadderSpec& spec, Complex phi, double normalization);

/// ||B-|phi> - phi|phi>|| from coefficient vectors rebuilt in the arithmetic
/// type Real. For small |phi| the true defect sits far below double round-off
/// in the other components; instantiate with a multiprecision type there.
template <typename Real>
Real coherent_defect_direct(const LadderSpec& spec, Complex phi) {
  using std::sqrt;
  const std::size_t size = spec.size();
  const Real phi_re = phi.real();
  const Real phi_im = phi.imag();
  std::vector<Real> re(size), im(size);
  re[0] = 1;
  im[0] = 0;
  for (std::size_t n = 1; n < size; ++n) {
    const Real root = sqrt(Real(spec.f(n)));
    re[n] = (re[n - 1] * phi_re - im[n - 1] * phi_im) / root;
    im[n] = (re[n - 1] * phi_im + im[n - 1] * phi_re) / root;
  }
  Real norm = 0;
  for (std::size_t n = 0; n < size; ++n) norm += re[n] * re[n] + im[n] * im[n];

  Real sum = 0;
  for (std::size_t i = 0; i < size; ++i) {
    Real low_re = 0, low_im = 0;
    if (i + 1 < size) {
      const Real root = sqrt(Real(spec.f(i + 1)));
      low_re = root * re[i + 1];
      low_im = root * im[i + 1];
    }
    const Real d_re = low_re - (phi_re * re[i] - phi_im * im[i]);
    const Real d_im = low_im - (phi_re * im[i] + phi_im * re[i]);
    sum += d_re * d_re + d_im * d_im;
  }
  return sqrt(sum / norm);
}

}  // namespace susymorse
