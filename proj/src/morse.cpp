#include "susymorse/morse.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "susymorse/specfun.hpp"

namespace susymorse {

MorseParams MorseParams::from_p(double p) {
  if (!(p > 0.0) || !std::isfinite(p)) throw std::domain_error("MorseParams: p must be positive and finite");
  MorseParams params;
  params.p = p;
  params.nu = 2.0 * p + 1.0;
  params.k = static_cast<int>(std::floor(p));
  params.eps = p - params.k;
  return params;
}

void check_pair(const MorseParams& params, QuantumPair pair) {
  if (pair.n < 0 || pair.m < 0 || pair.n > params.k || pair.m > params.k) {
    throw std::out_of_range("quantum pair (" + std::to_string(pair.n) + "," + std::to_string(pair.m) +
                            ") outside 0.." + std::to_string(params.k));
  }
}

namespace {

void check_level(const MorseParams& params, int n) {
  if (n < 0 || n > params.k) {
    throw std::out_of_range("Morse level " + std::to_string(n) + " outside 0.." + std::to_string(params.k));
  }
}

// ln N_n with N_n^2 = (nu - 2n - 1) Gamma(n+1) / Gamma(nu - n).
double log_norm(const MorseParams& params, int n) {
  return 0.5 * (std::log(params.nu - 2.0 * n - 1.0) + log_gamma(n + 1.0) - log_gamma(params.nu - n));
}

struct Level {
  double value;
  double d1;
};

Level evaluate_level(const MorseParams& params, int n, double log_nrm, double x) {
  const double log_xt = std::log(params.nu) - x;
  const double xt = std::exp(log_xt);
  const double power = params.p - n;
  const double envelope = std::exp(log_nrm - 0.5 * xt + power * log_xt);
  const double alpha = 2.0 * power;
  const double lag = laguerre(n, alpha, xt);
  const double dlag = laguerre_deriv(n, alpha, xt);
  // d/dx = -xt d/dxt
  return {envelope * lag, -envelope * ((power - 0.5 * xt) * lag + xt * dlag)};
}

}  // namespace

double potential1d(const MorseParams& params, double x) {
  const double e1 = std::exp(-x);
  return params.nu * params.nu / 8.0 * (e1 * e1 - 2.0 * e1);
}

double potential1d_dx(const MorseParams& params, double x) {
  const double e1 = std::exp(-x);
  return params.nu * params.nu / 8.0 * (-2.0 * e1 * e1 + 2.0 * e1);
}

double energy1d(const MorseParams& params, int n) {
  const double d = params.p - n;
  return -0.5 * d * d;
}

double psi1d(const MorseParams& params, int n, double x) {
  check_level(params, n);
  return evaluate_level(params, n, log_norm(params, n), x).value;
}

double psi1d_dx(const MorseParams& params, int n, double x) {
  check_level(params, n);
  return evaluate_level(params, n, log_norm(params, n), x).d1;
}

void sample_levels(const MorseParams& params, double x, LevelSample& out, int max_level) {
  if (max_level > params.k) check_level(params, max_level);
  const auto count = static_cast<std::size_t>(max_level < 0 ? params.level_count() : max_level + 1);
  out.x = x;
  out.value.resize(count);
  out.d1.resize(count);
  out.d2.resize(count);
  out.d3.resize(count);
  const double v = potential1d(params, x);
  const double dv = potential1d_dx(params, x);
  for (std::size_t n = 0; n < count; ++n) {
    const int level = static_cast<int>(n);
    const auto [value, d1] = evaluate_level(params, level, log_norm(params, level), x);
    const double kinetic = 2.0 * (v - energy1d(params, level));
    out.value[n] = value;
    out.d1[n] = d1;
    out.d2[n] = kinetic * value;
    out.d3[n] = 2.0 * dv * value + kinetic * d1;
  }
}

LevelSample sample_levels(const MorseParams& params, double x, int max_level) {
  LevelSample out;
  sample_levels(params, x, out, max_level);
  return out;
}

ScalarField2D psi2d(const MorseParams& params, QuantumPair pair) {
  check_pair(params, pair);
  const double ln_n = log_norm(params, pair.n);
  const double ln_m = log_norm(params, pair.m);
  auto value = [params, pair, ln_n, ln_m](double x, double y) -> Complex {
    return evaluate_level(params, pair.n, ln_n, x).value * evaluate_level(params, pair.m, ln_m, y).value;
  };
  auto dx = [params, pair, ln_n, ln_m](double x, double y) -> Complex {
    return evaluate_level(params, pair.n, ln_n, x).d1 * evaluate_level(params, pair.m, ln_m, y).value;
  };
  return ScalarField2D(value, dx);
}

double energy(const MorseParams& params, QuantumPair pair) {
  return energy1d(params, pair.n) + energy1d(params, pair.m);
}

double scaled_energy(const MorseParams& params, QuantumPair pair) { return 2.0 * energy(params, pair); }

}  // namespace susymorse
