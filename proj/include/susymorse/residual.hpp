#pragma once

#include "susymorse/field.hpp"
#include "susymorse/morse.hpp"
#include "susymorse/quadrature.hpp"

namespace susymorse {

enum class HamiltonianKind { initial, partner };

struct ResidualOptions {
  Box box{-2.0, 12.0, -2.0, 12.0};
  int points = 512;
  /// Central-difference order of the Laplacian: 2, 4, 6 or 8.
  int stencil_order = 8;
  /// Nodes with |x - y| below this are left out of the residual norm
  /// (partner Hamiltonian only).
  double diagonal_band = 0.1;
};

struct ResidualReport {
  /// ||(H - E) f|| / ||f|| over interior nodes outside the diagonal band.
  double residual = 0.0;
  /// <f|H f> / <f|f> over all interior nodes.
  double rayleigh = 0.0;
};

/// Applies H (or the partner H) to a sampled field by central differences on
/// a points x points grid; the y nodes are offset by half a cell.
ResidualReport hamiltonian_residual(const MorseParams& params, const ScalarField2D& field, double energy,
                                    HamiltonianKind kind, const ResidualOptions& options = {});

}  // namespace susymorse
