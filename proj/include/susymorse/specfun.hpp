#pragma once

namespace susymorse {

/// Generalized Laguerre polynomial L_n^alpha(z) by upward three-term
/// recurrence. Throws std::domain_error for n < 0, z < 0 or alpha <= -1.
double laguerre(int n, double alpha, double z);

/// d/dz L_n^alpha(z) = -L_{n-1}^{alpha+1}(z); zero for n == 0.
double laguerre_deriv(int n, double alpha, double z);

/// ln Gamma(x) for x > 0 (Lanczos, g = 607/128). Throws std::domain_error
/// for x <= 0.
double log_gamma(double x);

}  // namespace susymorse
