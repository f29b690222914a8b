#include "susymorse/field.hpp"

#include "susymorse/parallel.hpp"

namespace susymorse {

Complex ScalarField2D::dx(double x, double y) const {
  if (dx_) return dx_(x, y);
  // Sixth-order central difference.
  constexpr double h = 1e-3;
  const Complex d1 = value_(x + h, y) - value_(x - h, y);
  const Complex d2 = value_(x + 2 * h, y) - value_(x - 2 * h, y);
  const Complex d3 = value_(x + 3 * h, y) - value_(x - 3 * h, y);
  return (45.0 * d1 - 9.0 * d2 + d3) / (60.0 * h);
}

SampledGrid ScalarField2D::sample(std::span<const double> xs, std::span<const double> ys) const {
  SampledGrid grid;
  grid.xs.assign(xs.begin(), xs.end());
  grid.ys.assign(ys.begin(), ys.end());
  grid.values.resize(xs.size() * ys.size());
  detail::parallel_for(ys.size(), [&](std::size_t iy) {
    Complex* row = grid.values.data() + iy * xs.size();
    for (std::size_t ix = 0; ix < xs.size(); ++ix) row[ix] = value_(xs[ix], ys[iy]);
  });
  return grid;
}

}  // namespace susymorse
