#include "susymorse/observables.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "susymorse/parallel.hpp"

namespace susymorse {

namespace {

// Integrates integrand(ix, iy) -> Acc over the grid. Each x panel produces a
// partial from per-node sums; partials are combined in panel order.
template <typename Acc, typename Fn>
Acc integrate_panels(const QuadratureGrid& grid, Fn&& integrand) {
  const AxisRule& xr = grid.x();
  const AxisRule& yr = grid.y();
  std::vector<Acc> partial(xr.panels(), Acc{});
  detail::parallel_for(xr.panels(), [&](std::size_t p) {
    std::vector<Acc> rows;
    for (std::size_t ix = xr.panel_offsets[p]; ix < xr.panel_offsets[p + 1]; ++ix) {
      std::vector<Acc> terms(yr.size());
      for (std::size_t iy = 0; iy < yr.size(); ++iy) terms[iy] = integrand(ix, iy) * yr.weights[iy];
      rows.push_back(detail::pairwise_sum(terms.data(), terms.size()) * xr.weights[ix]);
    }
    partial[p] = detail::pairwise_sum(rows.data(), rows.size());
  });
  return detail::pairwise_sum(partial.data(), partial.size());
}

template <std::size_t N>
struct Sums {
  std::array<double, N> v{};
  Sums& operator+=(const Sums& o) {
    for (std::size_t i = 0; i < N; ++i) v[i] += o.v[i];
    return *this;
  }
  friend Sums operator+(Sums a, const Sums& b) { return a += b; }
  friend Sums operator*(Sums a, double w) {
    for (double& x : a.v) x *= w;
    return a;
  }
};

Complex derivative_y(const ScalarField2D& f, double x, double y) {
  constexpr double h = 1e-3;
  const Complex d1 = f(x, y + h) - f(x, y - h);
  const Complex d2 = f(x, y + 2 * h) - f(x, y - 2 * h);
  const Complex d3 = f(x, y + 3 * h) - f(x, y - 3 * h);
  return (45.0 * d1 - 9.0 * d2 + d3) / (60.0 * h);
}

}  // namespace

Complex overlap(const ScalarField2D& a, const ScalarField2D& b, const QuadratureGrid& grid) {
  const auto& xs = grid.x().nodes;
  const auto& ys = grid.y().nodes;
  return integrate_panels<Complex>(grid, [&](std::size_t ix, std::size_t iy) {
    return std::conj(a(xs[ix], ys[iy])) * b(xs[ix], ys[iy]);
  });
}

Moments moments(const ScalarField2D& state, const QuadratureGrid& grid, Axis axis) {
  const auto& xs = grid.x().nodes;
  const auto& ys = grid.y().nodes;
  // norm, q, q^2, Re(conj psi dpsi), Im(conj psi dpsi), |dpsi|^2
  const auto s = integrate_panels<Sums<6>>(grid, [&](std::size_t ix, std::size_t iy) {
    const double x = xs[ix];
    const double y = ys[iy];
    const Complex v = state(x, y);
    const Complex d = axis == Axis::x ? state.dx(x, y) : derivative_y(state, x, y);
    const double q = axis == Axis::x ? x : y;
    const double rho = std::norm(v);
    const Complex cd = std::conj(v) * d;
    return Sums<6>{{rho, q * rho, q * q * rho, cd.real(), cd.imag(), std::norm(d)}};
  });
  Moments m;
  m.norm = s.v[0];
  if (std::abs(m.norm - 1.0) > 1e-4) {
    std::ostringstream msg;
    msg << "state norm " << m.norm << " deviates from 1 by more than 1e-4";
    throw NormalizationError(msg.str());
  }
  m.mean_q = s.v[1];
  m.mean_q2 = s.v[2];
  // <P> = -i int conj(psi) dpsi
  m.mean_p = Complex{0.0, -1.0} * Complex{s.v[3], s.v[4]};
  m.mean_p2 = s.v[5];
  return m;
}

UncertaintyReport uncertainty_from_moments(const Moments& m, double phi) {
  UncertaintyReport r;
  r.phi = phi;
  r.var_q = m.mean_q2 - m.mean_q * m.mean_q;
  r.var_p = m.mean_p2 - std::norm(m.mean_p);
  r.product = r.var_q * r.var_p;
  return r;
}

UncertaintyReport variance_product(const ScalarField2D& state, const QuadratureGrid& grid, double phi) {
  return uncertainty_from_moments(moments(state, grid, Axis::x), phi);
}

namespace {

struct MatrixAcc {
  std::vector<double> gram, x, x2, p2, d;
  explicit MatrixAcc(std::size_t n) : gram(n * n), x(n * n), x2(n * n), p2(n * n), d(n * n) {}
  void add(const MatrixAcc& o) {
    for (std::size_t i = 0; i < gram.size(); ++i) {
      gram[i] += o.gram[i];
      x[i] += o.x[i];
      x2[i] += o.x2[i];
      p2[i] += o.p2[i];
      d[i] += o.d[i];
    }
  }
};

}  // namespace

BasisMatrices basis_matrices(const PartnerBasisEvaluator& basis, const QuadratureGrid& grid) {
  const std::size_t n = basis.size();
  const AxisRule& xr = grid.x();
  const AxisRule& yr = grid.y();

  std::vector<LevelSample> y_levels(yr.size());
  detail::parallel_for(yr.size(), [&](std::size_t iy) {
    sample_levels(basis.params(), yr.nodes[iy], y_levels[iy], basis.max_level());
  });

  std::vector<MatrixAcc> partial(xr.panels(), MatrixAcc(n));
  detail::parallel_for(xr.panels(), [&](std::size_t p) {
    MatrixAcc& acc = partial[p];
    std::vector<double> v(n), dv(n), row_m(n * n), row_p2(n * n), row_d(n * n);
    LevelSample sx;
    for (std::size_t ix = xr.panel_offsets[p]; ix < xr.panel_offsets[p + 1]; ++ix) {
      sample_levels(basis.params(), xr.nodes[ix], sx, basis.max_level());
      std::fill(row_m.begin(), row_m.end(), 0.0);
      std::fill(row_p2.begin(), row_p2.end(), 0.0);
      std::fill(row_d.begin(), row_d.end(), 0.0);
      for (std::size_t iy = 0; iy < yr.size(); ++iy) {
        basis.evaluate(sx, y_levels[iy], v, dv);
        const double w = yr.weights[iy];
        for (std::size_t i = 0; i < n; ++i) {
          const double wv = w * v[i];
          const double wd = w * dv[i];
          for (std::size_t j = i; j < n; ++j) {
            row_m[i * n + j] += wv * v[j];
            row_p2[i * n + j] += wd * dv[j];
          }
          for (std::size_t j = 0; j < n; ++j) row_d[i * n + j] += wv * dv[j];
        }
      }
      const double x = xr.nodes[ix];
      const double w = xr.weights[ix];
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
          const double mm = w * row_m[i * n + j];
          acc.gram[i * n + j] += mm;
          acc.x[i * n + j] += x * mm;
          acc.x2[i * n + j] += x * x * mm;
          acc.p2[i * n + j] += w * row_p2[i * n + j];
        }
        for (std::size_t j = 0; j < n; ++j) acc.d[i * n + j] += w * row_d[i * n + j];
      }
    }
  });

  MatrixAcc total(n);
  for (const MatrixAcc& part : partial) total.add(part);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      total.gram[i * n + j] = total.gram[j * n + i];
      total.x[i * n + j] = total.x[j * n + i];
      total.x2[i * n + j] = total.x2[j * n + i];
      total.p2[i * n + j] = total.p2[j * n + i];
    }
  }
  return {n, std::move(total.gram), std::move(total.x), std::move(total.x2), std::move(total.p2), std::move(total.d)};
}

std::vector<double> norms_squared(const PartnerBasisEvaluator& basis, const QuadratureGrid& grid) {
  const std::size_t n = basis.size();
  const AxisRule& xr = grid.x();
  const AxisRule& yr = grid.y();

  std::vector<LevelSample> y_levels(yr.size());
  detail::parallel_for(yr.size(), [&](std::size_t iy) {
    sample_levels(basis.params(), yr.nodes[iy], y_levels[iy], basis.max_level());
  });

  std::vector<std::vector<double>> partial(xr.panels(), std::vector<double>(n));
  detail::parallel_for(xr.panels(), [&](std::size_t p) {
    std::vector<double> v(n), row(n);
    LevelSample sx;
    for (std::size_t ix = xr.panel_offsets[p]; ix < xr.panel_offsets[p + 1]; ++ix) {
      sample_levels(basis.params(), xr.nodes[ix], sx, basis.max_level());
      std::fill(row.begin(), row.end(), 0.0);
      for (std::size_t iy = 0; iy < yr.size(); ++iy) {
        basis.evaluate(sx, y_levels[iy], v);
        for (std::size_t j = 0; j < n; ++j) row[j] += yr.weights[iy] * v[j] * v[j];
      }
      for (std::size_t j = 0; j < n; ++j) partial[p][j] += xr.weights[ix] * row[j];
    }
  });

  std::vector<double> total(n);
  for (const auto& part : partial)
    for (std::size_t j = 0; j < n; ++j) total[j] += part[j];
  return total;
}

Moments moments_from_coefficients(const BasisMatrices& m, std::span<const Complex> c) {
  if (c.size() != m.n) throw std::invalid_argument("moments_from_coefficients: coefficient length mismatch");
  auto expect = [&](const std::vector<double>& op) {
    Complex sum{};
    for (std::size_t i = 0; i < m.n; ++i) {
      Complex row{};
      for (std::size_t j = 0; j < m.n; ++j) row += op[i * m.n + j] * c[j];
      sum += std::conj(c[i]) * row;
    }
    return sum;
  };
  Moments out;
  out.norm = expect(m.gram).real();
  if (std::abs(out.norm - 1.0) > 1e-4) {
    std::ostringstream msg;
    msg << "state norm " << out.norm << " deviates from 1 by more than 1e-4";
    throw NormalizationError(msg.str());
  }
  out.mean_q = expect(m.x).real();
  out.mean_q2 = expect(m.x2).real();
  out.mean_p = Complex{0.0, -1.0} * expect(m.d);
  out.mean_p2 = expect(m.p2).real();
  return out;
}

std::vector<Complex> gram_matrix(const std::vector<ScalarField2D>& fields, const QuadratureGrid& grid) {
  const std::size_t n = fields.size();
  const AxisRule& xr = grid.x();
  const AxisRule& yr = grid.y();
  std::vector<std::vector<Complex>> partial(xr.panels(), std::vector<Complex>(n * n));
  detail::parallel_for(xr.panels(), [&](std::size_t p) {
    std::vector<Complex> row(n * yr.size());
    std::vector<Complex> inner(n * n);
    for (std::size_t ix = xr.panel_offsets[p]; ix < xr.panel_offsets[p + 1]; ++ix) {
      const double x = xr.nodes[ix];
      for (std::size_t f = 0; f < n; ++f) {
        for (std::size_t iy = 0; iy < yr.size(); ++iy) row[f * yr.size() + iy] = fields[f](x, yr.nodes[iy]);
      }
      std::fill(inner.begin(), inner.end(), Complex{});
      for (std::size_t iy = 0; iy < yr.size(); ++iy) {
        const double w = yr.weights[iy];
        for (std::size_t i = 0; i < n; ++i) {
          const Complex a = std::conj(row[i * yr.size() + iy]) * w;
          for (std::size_t j = i; j < n; ++j) inner[i * n + j] += a * row[j * yr.size() + iy];
        }
      }
      for (std::size_t i = 0; i < n * n; ++i) partial[p][i] += xr.weights[ix] * inner[i];
    }
  });
  std::vector<Complex> gram(n * n);
  for (const auto& part : partial) {
    for (std::size_t i = 0; i < n * n; ++i) gram[i] += part[i];
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) gram[i * n + j] = std::conj(gram[j * n + i]);
  }
  return gram;
}

Grid2D<double> density_grid(const ScalarField2D& state, const Box& box, int nx, int ny, double diagonal_offset) {
  if (nx < 2 || ny < 2) throw std::invalid_argument("density_grid: need at least 2 samples per axis");
  std::vector<double> xs(nx), ys(ny);
  for (int i = 0; i < nx; ++i) xs[i] = box.x_min + (box.x_max - box.x_min) * i / (nx - 1);
  for (int j = 0; j < ny; ++j) ys[j] = box.y_min + (box.y_max - box.y_min) * j / (ny - 1) + diagonal_offset;
  const SampledGrid sampled = state.sample(xs, ys);
  Grid2D<double> out{sampled.xs, sampled.ys, std::vector<double>(sampled.values.size())};
  std::transform(sampled.values.begin(), sampled.values.end(), out.values.begin(),
                 [](const Complex& v) { return std::norm(v); });
  return out;
}

double grid_normalization(const Grid2D<double>& density) {
  const double dx = (density.xs.back() - density.xs.front()) / static_cast<double>(density.nx() - 1);
  const double dy = (density.ys.back() - density.ys.front()) / static_cast<double>(density.ny() - 1);
  return detail::pairwise_sum(density.values.data(), density.values.size()) * dx * dy;
}

std::vector<GridPeak> global_maxima(const Grid2D<double>& density, double rel_tol) {
  const double top = *std::max_element(density.values.begin(), density.values.end());
  std::vector<GridPeak> peaks;
  if (!(top > 0.0)) return peaks;
  for (std::size_t iy = 1; iy + 1 < density.ny(); ++iy) {
    for (std::size_t ix = 1; ix + 1 < density.nx(); ++ix) {
      const double v = density.at(ix, iy);
      if (v < (1.0 - rel_tol) * top) continue;
      bool is_max = true;
      for (int dy = -1; dy <= 1 && is_max; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          if (dx == 0 && dy == 0) continue;
          if (density.at(ix + dx, iy + dy) > v) {
            is_max = false;
            break;
          }
        }
      }
      if (is_max) peaks.push_back({ix, iy, density.xs[ix], density.ys[iy], v});
    }
  }
  std::sort(peaks.begin(), peaks.end(), [](const GridPeak& a, const GridPeak& b) {
    if (a.value != b.value) return a.value > b.value;
    return a.ix != b.ix ? a.ix < b.ix : a.iy < b.iy;
  });
  return peaks;
}

double max_near_diagonal(const Grid2D<double>& density, double max_gap) {
  double best = 0.0;
  for (std::size_t iy = 0; iy < density.ny(); ++iy) {
    for (std::size_t ix = 0; ix < density.nx(); ++ix) {
      if (std::abs(density.xs[ix] - density.ys[iy]) <= max_gap) best = std::max(best, density.at(ix, iy));
    }
  }
  return best;
}

}  // namespace susymorse
