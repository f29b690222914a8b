#include "susymorse/residual.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "susymorse/susy.hpp"

namespace susymorse {

namespace {

std::vector<double> second_derivative_stencil(int order) {
  switch (order) {
    case 2:
      return {1.0, -2.0, 1.0};
    case 4:
      return {-1.0 / 12, 4.0 / 3, -5.0 / 2, 4.0 / 3, -1.0 / 12};
    case 6:
      return {1.0 / 90, -3.0 / 20, 3.0 / 2, -49.0 / 18, 3.0 / 2, -3.0 / 20, 1.0 / 90};
    case 8:
      return {-1.0 / 560, 8.0 / 315, -1.0 / 5, 8.0 / 5, -205.0 / 72, 8.0 / 5, -1.0 / 5, 8.0 / 315, -1.0 / 560};
    default:
      throw std::invalid_argument("hamiltonian_residual: stencil order must be 2, 4, 6 or 8");
  }
}

}  // namespace

ResidualReport hamiltonian_residual(const MorseParams& params, const ScalarField2D& field, double energy,
                                    HamiltonianKind kind, const ResidualOptions& options) {
  const auto stencil = second_derivative_stencil(options.stencil_order);
  const int reach = static_cast<int>(stencil.size() / 2);
  const int n = options.points;
  if (n < 2 * reach + 2) throw std::invalid_argument("hamiltonian_residual: grid too small for stencil");

  const Box& b = options.box;
  const double hx = (b.x_max - b.x_min) / (n - 1);
  const double hy = (b.y_max - b.y_min) / (n - 1);
  std::vector<double> xs(n), ys(n);
  for (int i = 0; i < n; ++i) {
    xs[i] = b.x_min + i * hx;
    ys[i] = b.y_min + i * hy + 0.5 * hy;
  }
  const SampledGrid grid = field.sample(xs, ys);
  auto f = [&](int ix, int iy) { return grid.values[static_cast<std::size_t>(iy) * n + ix]; };

  double res2 = 0.0, norm2_band = 0.0, num = 0.0, den = 0.0;
  for (int iy = reach; iy < n - reach; ++iy) {
    for (int ix = reach; ix < n - reach; ++ix) {
      Complex lap{};
      for (int s = -reach; s <= reach; ++s) {
        const double c = stencil[s + reach];
        lap += c * f(ix + s, iy) / (hx * hx) + c * f(ix, iy + s) / (hy * hy);
      }
      const double x = xs[ix];
      const double y = ys[iy];
      const double v = kind == HamiltonianKind::partner ? partner_potential(params, x, y)
                                                        : potential1d(params, x) + potential1d(params, y);
      const Complex value = f(ix, iy);
      const Complex h_value = -0.5 * lap + v * value;
      num += (std::conj(value) * h_value).real();
      den += std::norm(value);
      const bool in_band = kind == HamiltonianKind::partner && std::abs(x - y) < options.diagonal_band;
      if (!in_band) {
        res2 += std::norm(h_value - energy * value);
        norm2_band += std::norm(value);
      }
    }
  }
  ResidualReport report;
  report.residual = norm2_band > 0.0 ? std::sqrt(res2 / norm2_band) : 0.0;
  report.rayleigh = den > 0.0 ? num / den : 0.0;
  return report;
}

}  // namespace susymorse
