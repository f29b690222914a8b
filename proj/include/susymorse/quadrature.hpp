#pragma once

#include <cstddef>
#include <vector>

#include "susymorse/morse.hpp"

namespace susymorse {

struct Box {
  double x_min = -4.0;
  double x_max = 25.0;
  double y_min = -4.0;
  double y_max = 25.0;
};

/// Nodes and weights on [-1, 1], Newton iteration on P_n.
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussLegendre gauss_legendre(int n);

/// Composite rule on one axis; panel p owns nodes [offsets[p], offsets[p+1]).
struct AxisRule {
  std::vector<double> edges;
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<std::size_t> panel_offsets;

  [[nodiscard]] std::size_t size() const { return nodes.size(); }
  [[nodiscard]] std::size_t panels() const { return panel_offsets.size() - 1; }
};

AxisRule composite_rule(const std::vector<double>& edges, int nodes_per_panel);

struct QuadratureOptions {
  int core_panels = 24;
  int nodes_per_panel = 16;
  double core_min = -4.0;
  double core_max = 25.0;
  /// Panel width past core_max, out to the decay point of the top level.
  double tail_width = 5.0;
  /// Multiplies every panel count (2 = doubled grid).
  int refine = 1;
};

/// First core_max + j * tail_width at which every |psi_n| < threshold
/// (capped at 200 tail panels).
double decay_boundary(const MorseParams& params, double start, double step, double threshold = 1e-12);

/// Tensor-product composite Gauss-Legendre grid. The y axis uses the x panel
/// edges shifted by half a panel, so no node pair lies on y = x.
class QuadratureGrid {
 public:
  QuadratureGrid(AxisRule x, AxisRule y);

  static QuadratureGrid build(const MorseParams& params, const QuadratureOptions& options = {});

  [[nodiscard]] const AxisRule& x() const { return x_; }
  [[nodiscard]] const AxisRule& y() const { return y_; }
  [[nodiscard]] Box box() const;
  /// min |x_i - y_j| over all node pairs.
  [[nodiscard]] double diagonal_gap() const { return diagonal_gap_; }
  [[nodiscard]] std::size_t points() const { return x_.size() * y_.size(); }

 private:
  AxisRule x_;
  AxisRule y_;
  double diagonal_gap_ = 0.0;
};

}  // namespace susymorse
