#include "susymorse/susy.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include "susymorse/spectrum.hpp"

namespace susymorse {

double r_eigenvalue(const MorseParams& params, QuantumPair pair) {
  const double d = pair.m - pair.n;
  const double s = 2.0 * params.p - pair.m - pair.n;
  return 0.5 * (d * d - 1.0) * (s * s - 1.0);
}

namespace {

struct Image {
  double value;
  double dx;
};

// Q+ (sqrt(2)-scaled) on (psi_n psi_m - psi_m psi_n)/sqrt(2), which equals the
// printed operator on F = psi_n(x) psi_m(y) - psi_m(x) psi_n(y).
Image qplus_image(const MorseParams& params, int n, int m, const LevelSample& sx, const LevelSample& sy) {
  const double u = sx.x - sy.x;
  const double de = energy1d(params, m) - energy1d(params, n);

  const double ax = sx.value[n], ax1 = sx.d1[n], ax2 = sx.d2[n];
  const double bx = sx.value[m], bx1 = sx.d1[m], bx2 = sx.d2[m];
  const double ay = sy.value[n], ay1 = sy.d1[n];
  const double by = sy.value[m], by1 = sy.d1[m];

  const double f = ax * by - bx * ay;
  const double sym = ax * by + bx * ay;
  const double dminus = ax1 * by - bx1 * ay - ax * by1 + bx * ay1;
  const double dplus = ax1 * by - bx1 * ay + ax * by1 - bx * ay1;
  const double c = f - dplus;

  const double half = 0.5 * u;
  const double sh = std::sinh(half);
  const double coth = std::cosh(half) / sh;
  const double csch2 = 1.0 / (sh * sh);

  const double value = de * sym - 0.5 * dminus + 0.5 * coth * c;

  const double dsym = ax1 * by + bx1 * ay;
  const double ddminus = ax2 * by - bx2 * ay - ax1 * by1 + bx1 * ay1;
  const double df = ax1 * by - bx1 * ay;
  const double ddplus = ax2 * by - bx2 * ay + ax1 * by1 - bx1 * ay1;
  const double dc = df - ddplus;
  const double dx = de * dsym - 0.5 * ddminus + 0.5 * (-0.5 * csch2 * c + coth * dc);
  return {value, dx};
}

// Limit on the diagonal, evaluated at the midpoint s. The coth term tends to
// (d_x - d_y) C / 2 at (s, s); the total vanishes analytically and the field is
// even in u, so the gradient limit is zero.
Image qplus_diagonal(const MorseParams& params, int n, int m, const LevelSample& mid) {
  const double de = energy1d(params, m) - energy1d(params, n);
  const double a = mid.value[n], a1 = mid.d1[n], a2 = mid.d2[n];
  const double b = mid.value[m], b1 = mid.d1[m], b2 = mid.d2[m];
  const double wronskian = a1 * b - a * b1;
  const double coth_limit = wronskian - (a2 * b - a * b2);
  const double value = 2.0 * de * a * b - wronskian + coth_limit;
  return {value, 0.0};
}

}  // namespace

PartnerBasisEvaluator::PartnerBasisEvaluator(const MorseParams& params, std::vector<QuantumPair> pairs,
                                             std::vector<double> scales)
    : params_(params), pairs_(std::move(pairs)), scales_(std::move(scales)) {
  if (scales_.size() != pairs_.size()) throw std::invalid_argument("PartnerBasisEvaluator: scale count mismatch");
  for (QuantumPair pair : pairs_) {
    check_pair(params_, pair);
    if (pair.n <= pair.m) throw std::invalid_argument("PartnerBasisEvaluator: pairs need n > m");
    max_level_ = std::max(max_level_, pair.n);
  }
}

void PartnerBasisEvaluator::evaluate(const LevelSample& at_x, const LevelSample& at_y, std::span<double> values,
                                     std::span<double> dx) const {
  const bool near = std::abs(at_x.x - at_y.x) < kDiagonalSeriesCutoff;
  LevelSample mid;
  if (near) sample_levels(params_, 0.5 * (at_x.x + at_y.x), mid, max_level_);
  for (std::size_t j = 0; j < pairs_.size(); ++j) {
    const auto [n, m] = pairs_[j];
    const Image img = near ? qplus_diagonal(params_, n, m, mid) : qplus_image(params_, n, m, at_x, at_y);
    values[j] = scales_[j] * img.value;
    if (!dx.empty()) dx[j] = scales_[j] * img.dx;
  }
}

void PartnerBasisEvaluator::evaluate(double x, double y, std::span<double> values, std::span<double> dx) const {
  const LevelSample sx = sample_levels(params_, x, max_level_);
  const LevelSample sy = sample_levels(params_, y, max_level_);
  evaluate(sx, sy, values, dx);
}

namespace {

ScalarField2D single_partner_field(const MorseParams& params, QuantumPair pair, double scale) {
  auto eval = std::make_shared<PartnerBasisEvaluator>(params, std::vector{pair}, std::vector{scale});
  auto value = [eval](double x, double y) -> Complex {
    double v = 0.0;
    eval->evaluate(x, y, {&v, 1});
    return v;
  };
  auto dx = [eval](double x, double y) -> Complex {
    double v = 0.0, d = 0.0;
    eval->evaluate(x, y, {&v, 1}, {&d, 1});
    return d;
  };
  return ScalarField2D(value, dx);
}

}  // namespace

ScalarField2D apply_qplus(const MorseParams& params, QuantumPair pair) {
  check_pair(params, pair);
  if (pair.n <= pair.m) throw std::invalid_argument("apply_qplus: requires n > m");
  return single_partner_field(params, pair, 1.0);
}

std::vector<NuState> build_nu_basis(const MorseParams& params) {
  if (params.k < 2) {
    throw EmptyBasis("no bound partner states for p=" + std::to_string(params.p) + " (k=" + std::to_string(params.k) +
                     " < 2)");
  }
  const double g = 1.0 / std::sqrt(2.0);
  const SpectrumTable table = build_mu_basis(params, {g, 0.0}, {-g, 0.0});

  std::vector<NuState> basis;
  for (const MuState& mu : table.mu) {
    if (mu.pair.n <= mu.pair.m + 1) continue;
    NuState state;
    state.index = static_cast<int>(basis.size());
    state.source = mu.pair;
    state.mu_index = mu.index;
    state.energy = mu.energy;
    state.norm_sq_analytic = r_eigenvalue(params, mu.pair);
    state.field = single_partner_field(params, mu.pair, 1.0 / std::sqrt(state.norm_sq_analytic));
    basis.push_back(std::move(state));
  }
  return basis;
}

PartnerBasisEvaluator make_partner_evaluator(const MorseParams& params, const std::vector<NuState>& basis) {
  std::vector<QuantumPair> pairs;
  std::vector<double> scales;
  for (const NuState& s : basis) {
    pairs.push_back(s.source);
    scales.push_back(1.0 / std::sqrt(s.norm_sq_analytic));
  }
  return PartnerBasisEvaluator(params, std::move(pairs), std::move(scales));
}

double partner_potential(const MorseParams& params, double x, double y) {
  const double s = std::sinh(0.5 * (x - y));
  return potential1d(params, x) + potential1d(params, y) + 0.5 / (s * s);
}

}  // namespace susymorse
