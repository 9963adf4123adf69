#pragma once

#include "g2/soliton/candidate.hpp"

namespace g2 {

struct EigenformFit {
  double mu2 = 0.0;       ///< least-squares mu^2 in Laplacian(psi) = mu^2 psi
  double residual = 0.0;  ///< sup over samples and coefficients of the misfit
};

/// Throws ConstraintViolated off the coclosed locus.
EigenformFit eigenform_check(const G2Profile& g, int samples = 64);

struct CompactIdentity {
  double lhs = 0.0;     ///< ||d* psi||^2
  double rhs = 0.0;     ///< -7 lambda Vol(M)
  double volume = 0.0;  ///< with Vol(N) = 1
  double ratio() const { return rhs == 0.0 ? (lhs == 0.0 ? 1.0 : INFINITY) : lhs / rhs; }
};

/// Both sides of ||d* psi||^2 + 7 lambda Vol(M) = 0 by quadrature. Throws
/// DivergentIntegral on an unbounded domain or when the quadrature fails.
CompactIdentity compact_identity_check(const SolitonCandidate& c);

}  // namespace g2
