#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace susymorse {

using Complex = std::complex<double>;

/// Values of a field on a tensor grid. Row-major with y as the row index:
/// value(ix, iy) = values[iy * xs.size() + ix].
template <typename T>
struct Grid2D {
  std::vector<double> xs;
  std::vector<double> ys;
  std::vector<T> values;

  [[nodiscard]] std::size_t nx() const { return xs.size(); }
  [[nodiscard]] std::size_t ny() const { return ys.size(); }
  [[nodiscard]] const T& at(std::size_t ix, std::size_t iy) const { return values[iy * xs.size() + ix]; }
};

using SampledGrid = Grid2D<Complex>;

/// A complex scalar function of (x, y), evaluated lazily. Optionally carries
/// an analytic x-derivative.
class ScalarField2D {
 public:
  using Evaluator = std::function<Complex(double, double)>;

  ScalarField2D() = default;
  explicit ScalarField2D(Evaluator value, Evaluator dx = {})
      : value_(std::move(value)), dx_(std::move(dx)) {}

  Complex operator()(double x, double y) const { return value_(x, y); }

  [[nodiscard]] bool has_dx() const { return static_cast<bool>(dx_); }
  /// Analytic d/dx when available, otherwise a six-point central difference.
  [[nodiscard]] Complex dx(double x, double y) const;

  [[nodiscard]] bool valid() const { return static_cast<bool>(value_); }

  /// Samples the evaluator at every (xs[i], ys[j]). Rows are evaluated in
  /// parallel; each value is exactly what operator() returns at that node.
  [[nodiscard]] SampledGrid sample(std::span<const double> xs, std::span<const double> ys) const;

 private:
  Evaluator value_;
  Evaluator dx_;
};

}  // namespace susymorse
