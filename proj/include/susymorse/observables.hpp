#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "susymorse/field.hpp"
#include "susymorse/quadrature.hpp"
#include "susymorse/susy.hpp"

namespace susymorse {

class NormalizationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Axis { x, y };

/// <a|b> on the tensor grid. Panels are summed independently and combined
/// in panel order, so the result does not depend on the thread count.
Complex overlap(const ScalarField2D& a, const ScalarField2D& b, const QuadratureGrid& grid);

/// Position and momentum moments along one axis. P = -i d/dx; <P^2> uses the
/// first-derivative form int |d psi|^2.
struct Moments {
  double norm = 1.0;
  double mean_q = 0.0;
  double mean_q2 = 0.0;
  Complex mean_p{};
  double mean_p2 = 0.0;
};

/// Throws NormalizationError if the norm deviates from 1 by more than 1e-4.
/// The x-derivative is analytic when the field provides one; y-derivatives
/// use central differences of the evaluator.
Moments moments(const ScalarField2D& state, const QuadratureGrid& grid, Axis axis = Axis::x);
inline Moments moments_x(const ScalarField2D& state, const QuadratureGrid& grid) {
  return moments(state, grid, Axis::x);
}

struct UncertaintyReport {
  double phi = 0.0;
  double var_q = 0.0;
  double var_p = 0.0;
  double product = 0.0;
};

UncertaintyReport uncertainty_from_moments(const Moments& m, double phi = 0.0);
UncertaintyReport variance_product(const ScalarField2D& state, const QuadratureGrid& grid, double phi = 0.0);

/// Matrix elements of a real partner basis on a grid, row-major n x n:
/// gram = <i|j>, x = <i|x|j>, x2 = <i|x^2|j>, p2 = <d_x i|d_x j>,
/// d = <i|d_x j>.
struct BasisMatrices {
  std::size_t n = 0;
  std::vector<double> gram;
  std::vector<double> x;
  std::vector<double> x2;
  std::vector<double> p2;
  std::vector<double> d;

  [[nodiscard]] double at(const std::vector<double>& m, std::size_t i, std::size_t j) const { return m[i * n + j]; }
};

BasisMatrices basis_matrices(const PartnerBasisEvaluator& basis, const QuadratureGrid& grid);

/// Diagonal of the Gram matrix only, for large sets of unnormalized images.
std::vector<double> norms_squared(const PartnerBasisEvaluator& basis, const QuadratureGrid& grid);

/// x-direction moments of sum_j c_j |nu_j> from precomputed matrix elements.
Moments moments_from_coefficients(const BasisMatrices& m, std::span<const Complex> coeffs);

/// Gram matrix of arbitrary fields (used for the mu basis).
std::vector<Complex> gram_matrix(const std::vector<ScalarField2D>& fields, const QuadratureGrid& grid);

/// |state|^2 on an nx x ny uniform grid over the box. The y nodes are shifted
/// by diagonal_offset so no sample sits exactly on y = x.
inline constexpr double kDensityDiagonalOffset = 1e-9;
Grid2D<double> density_grid(const ScalarField2D& state, const Box& box, int nx, int ny,
                            double diagonal_offset = kDensityDiagonalOffset);

/// sum(density) * cell area.
double grid_normalization(const Grid2D<double>& density);

struct GridPeak {
  std::size_t ix = 0;
  std::size_t iy = 0;
  double x = 0.0;
  double y = 0.0;
  double value = 0.0;
};

/// Interior local maxima (8-neighbour) within rel_tol of the global maximum,
/// sorted by value then position.
std::vector<GridPeak> global_maxima(const Grid2D<double>& density, double rel_tol = 1e-6);

/// Largest density over samples with |x - y| <= max_gap.
double max_near_diagonal(const Grid2D<double>& density, double max_gap);

}  // namespace susymorse
