#pragma once

#include "g2/soliton/candidate.hpp"

namespace g2 {

inline constexpr double kResidualTol = 1e-10;

/// CY soliton residuals. The complex constant b = b1 + i b2 is fitted as the
/// sample mean of -((e^{3i theta})' - e^{3i theta} k'); entries:
///   theta_eq   |3 theta' - b1 sin 3theta + b2 cos 3theta|
///   kprime_eq  |k' - b1 cos 3theta - b2 sin 3theta|
///   b_drift    |d/dr of the fitted expression| (zero for exact solitons)
ResidualReport residuals_cy(const SolitonCandidate& c, int samples = 200, double tol = kResidualTol);

/// NK soliton residuals with G = 1; entries:
///   eq1        h' - cos 3theta
///   eq2        (h^3 s)'' - 12 h s - lambda h^3 s - (k' h^3 s)',  s = sin 3theta
///   eq3        (h^3 c)' - 3h^2 - (lambda/4) h^4 - k' h^3 c,       c = cos 3theta
///   redundant  ((h^3 c)' - 3h^2)' - lambda h^3 c - (k' h^3 c)'
/// The redundant equation equals eq3' + lambda h^3 eq1.
ResidualReport residuals_nk(const SolitonCandidate& c, int samples = 200, double tol = kResidualTol);

/// -Laplacian(psi) - d(k' d/dr -| psi) - lambda psi in the form algebra, one
/// entry per basis coefficient. Throws ConstraintViolated off the coclosed
/// locus.
ResidualReport form_residual(const SolitonCandidate& c, int samples = 200, double tol = 1e-9);

}  // namespace g2
