#include "susymorse/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace susymorse {

GaussLegendre gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: need at least one node");
  GaussLegendre rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // Recompute the derivative at the converged root.
    double p0 = 1.0, p1 = 0.0;
    for (int j = 1; j <= n; ++j) {
      const double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
    }
    dp = n * (z * p0 - p1) / (z * z - 1.0);
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

AxisRule composite_rule(const std::vector<double>& edges, int nodes_per_panel) {
  if (edges.size() < 2) throw std::invalid_argument("composite_rule: need at least one panel");
  const GaussLegendre ref = gauss_legendre(nodes_per_panel);
  AxisRule rule;
  rule.edges = edges;
  rule.panel_offsets.push_back(0);
  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    const double a = edges[p];
    const double b = edges[p + 1];
    if (!(b > a)) throw std::invalid_argument("composite_rule: edges must increase");
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    for (int i = 0; i < nodes_per_panel; ++i) {
      rule.nodes.push_back(mid + half * ref.nodes[i]);
      rule.weights.push_back(half * ref.weights[i]);
    }
    rule.panel_offsets.push_back(rule.nodes.size());
  }
  return rule;
}

double decay_boundary(const MorseParams& params, double start, double step, double threshold) {
  constexpr int kMaxSteps = 200;
  double x = start;
  for (int j = 0; j < kMaxSteps; ++j, x += step) {
    const LevelSample s = sample_levels(params, x);
    const bool decayed = std::all_of(s.value.begin(), s.value.end(), [&](double v) { return std::abs(v) < threshold; });
    if (decayed) return x;
  }
  return x;
}

namespace {

double min_gap(const AxisRule& x, const AxisRule& y) {
  // Both node lists are sorted: merge-style scan.
  double best = std::numeric_limits<double>::infinity();
  std::size_t j = 0;
  for (double xi : x.nodes) {
    while (j + 1 < y.nodes.size() && y.nodes[j + 1] <= xi) ++j;
    best = std::min(best, std::abs(xi - y.nodes[j]));
    if (j + 1 < y.nodes.size()) best = std::min(best, std::abs(xi - y.nodes[j + 1]));
  }
  return best;
}

}  // namespace

QuadratureGrid::QuadratureGrid(AxisRule x, AxisRule y) : x_(std::move(x)), y_(std::move(y)) {
  diagonal_gap_ = min_gap(x_, y_);
  if (diagonal_gap_ < 1e-12) throw std::invalid_argument("QuadratureGrid: x and y nodes coincide");
}

QuadratureGrid QuadratureGrid::build(const MorseParams& params, const QuadratureOptions& options) {
  if (options.core_panels < 1 || options.nodes_per_panel < 1 || options.refine < 1) {
    throw std::invalid_argument("QuadratureGrid: panel and node counts must be positive");
  }
  const double tail_end = decay_boundary(params, options.core_max, options.tail_width);

  std::vector<double> edges;
  const int core = options.core_panels * options.refine;
  const double core_step = (options.core_max - options.core_min) / core;
  for (int i = 0; i <= core; ++i) edges.push_back(options.core_min + i * core_step);
  const int tail = static_cast<int>(std::lround((tail_end - options.core_max) / options.tail_width)) * options.refine;
  const double tail_step = tail > 0 ? (tail_end - options.core_max) / tail : 0.0;
  for (int i = 1; i <= tail; ++i) edges.push_back(options.core_max + i * tail_step);

  std::vector<double> shifted;
  shifted.push_back(edges.front());
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) shifted.push_back(0.5 * (edges[i] + edges[i + 1]));
  shifted.push_back(edges.back());

  return QuadratureGrid(composite_rule(edges, options.nodes_per_panel),
                        composite_rule(shifted, options.nodes_per_panel));
}

Box QuadratureGrid::box() const {
  return {x_.edges.front(), x_.edges.back(), y_.edges.front(), y_.edges.back()};
}

}  // namespace susymorse
