#pragma once

#include <functional>

namespace cavity {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  double l1 = 0.0; // integral of |f|, the scale the tolerance is measured against
  int doublings = 0;
  long evaluations = 0;
};

/// Romberg integration: composite trapezoid rule on 2^k panels with
/// Richardson extrapolation. Converged once two consecutive diagonal
/// differences are below max(tol * max(|value|, int |f|), abs_tol). The
/// error estimate includes a rounding floor proportional to int |f|.
/// abs_tol matters for integrands that cancel to rounding noise.
///
/// Throws NonConvergence after `max_doublings` refinements.
QuadratureResult quadrature(const std::function<double(double)>& f, double a, double b, double tol = 1e-12,
                            int max_doublings = 20, double abs_tol = 0.0);

} // namespace cavity
