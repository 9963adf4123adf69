#pragma once

#include <functional>
#include <string>

namespace g2 {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long evaluations = 0;
};

/// Adaptive Simpson on [a, b] with absolute tolerance `tol`. Throws
/// QuadratureFailure when the recursion depth is exhausted first.
QuadratureResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                  double tol = 1e-12, int max_depth = 48);

/// Composite 16-point Gauss-Legendre with `panels` equal panels. The rule is
/// open, so integrands singular at the endpoints are never evaluated there.
double gauss_legendre(const std::function<double(double)>& f, double a, double b, int panels);

/// Gauss-Legendre with panel doubling until two successive estimates agree to
/// `rel_tol`. Throws DivergentIntegral on non-finite values or no convergence.
QuadratureResult integrate_open(const std::function<double(double)>& f, double a, double b,
                                double rel_tol = 1e-12, int max_panels = 4096);

}  // namespace g2
