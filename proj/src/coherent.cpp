#include "susymorse/coherent.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

#include "susymorse/spectrum.hpp"

namespace susymorse {

LadderSpec::LadderSpec(std::vector<double> strengths) : strengths_(std::move(strengths)) {
  if (strengths_.empty()) throw std::invalid_argument("LadderSpec: empty spectrum");
  if (strengths_.front() != 0.0) throw std::invalid_argument("LadderSpec: f(0) must be 0");
  log_factorials_.assign(strengths_.size(), 0.0);
  for (std::size_t i = 1; i < strengths_.size(); ++i) {
    if (!(strengths_[i] > strengths_[i - 1])) throw std::invalid_argument("LadderSpec: f must be strictly increasing");
    log_factorials_[i] = log_factorials_[i - 1] + std::log(strengths_[i]);
  }
}

LadderSpec LadderSpec::from_partner_basis(const MorseParams& params, const std::vector<NuState>& basis) {
  if (basis.empty()) throw std::invalid_argument("LadderSpec: empty partner basis");
  const double ground = scaled_spectrum(params, basis.front().source);
  std::vector<double> f;
  f.reserve(basis.size());
  for (const NuState& s : basis) f.push_back(scaled_spectrum(params, s.source) - ground);
  f.front() = 0.0;
  return LadderSpec(std::move(f));
}

std::vector<Complex> ladder_lower(const LadderSpec& spec, std::span<const Complex> coeffs) {
  if (coeffs.size() != spec.size()) throw std::invalid_argument("ladder_lower: coefficient length mismatch");
  std::vector<Complex> out(coeffs.size());
  for (std::size_t i = 1; i < coeffs.size(); ++i) out[i - 1] = std::sqrt(spec.f(i)) * coeffs[i];
  return out;
}

std::vector<Complex> ladder_raise(const LadderSpec& spec, std::span<const Complex> coeffs) {
  if (coeffs.size() != spec.size()) throw std::invalid_argument("ladder_raise: coefficient length mismatch");
  std::vector<Complex> out(coeffs.size());
  for (std::size_t i = 0; i + 1 < coeffs.size(); ++i) out[i + 1] = std::sqrt(spec.f(i + 1)) * coeffs[i];
  return out;
}

std::vector<Complex> coherent_coefficients(const LadderSpec& spec, Complex phi) {
  std::vector<Complex> c(spec.size());
  c[0] = 1.0;
  const double mag = std::abs(phi);
  if (mag == 0.0) return c;
  const double log_mag = std::log(mag);
  const double arg = std::arg(phi);
  for (std::size_t n = 1; n < c.size(); ++n) {
    const double nn = static_cast<double>(n);
    c[n] = std::polar(std::exp(nn * log_mag - 0.5 * spec.log_factorial(n)), nn * arg);
  }
  return c;
}

std::vector<Complex> CoherentState::normalized_coefficients() const {
  std::vector<Complex> out(coefficients);
  const double scale = 1.0 / std::sqrt(normalization);
  for (Complex& c : out) c *= scale;
  return out;
}

CoherentState coherent_state(const MorseParams& params, const std::vector<NuState>& basis, Complex phi) {
  if (basis.empty()) throw std::invalid_argument("coherent_state: empty partner basis");
  const LadderSpec spec = LadderSpec::from_partner_basis(params, basis);

  CoherentState state;
  state.phi = phi;
  state.coefficients = coherent_coefficients(spec, phi);
  state.normalization = 0.0;
  for (const Complex& c : state.coefficients) state.normalization += std::norm(c);

  auto eval = std::make_shared<const PartnerBasisEvaluator>(make_partner_evaluator(params, basis));
  auto weights = std::make_shared<const std::vector<Complex>>(state.normalized_coefficients());
  auto value = [eval, weights](double x, double y) -> Complex {
    std::vector<double> v(eval->size());
    eval->evaluate(x, y, v);
    Complex sum{};
    for (std::size_t j = 0; j < v.size(); ++j) sum += (*weights)[j] * v[j];
    return sum;
  };
  auto dx = [eval, weights](double x, double y) -> Complex {
    std::vector<double> v(eval->size()), d(eval->size());
    eval->evaluate(x, y, v, d);
    Complex sum{};
    for (std::size_t j = 0; j < d.size(); ++j) sum += (*weights)[j] * d[j];
    return sum;
  };
  state.field = ScalarField2D(value, dx);
  return state;
}

double coherent_defect(const LadderSpec& spec, const CoherentState& state) {
  const auto c = state.normalized_coefficients();
  const auto lowered = ladder_lower(spec, c);
  double sum = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) sum += std::norm(lowered[i] - state.phi * c[i]);
  return std::sqrt(sum);
}

double coherent_defect_closed_form(const LadderSpec& spec, Complex phi, double normalization) {
  const double mag = std::abs(phi);
  if (mag == 0.0) return 0.0;
  const std::size_t top = spec.size() - 1;
  return std::exp(static_cast<double>(top + 1) * std::log(mag) -
                  0.5 * (std::log(normalization) + spec.log_factorial(top)));
}

}  // namespace susymorse
