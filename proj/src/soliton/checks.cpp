#include "g2/soliton/checks.hpp"

#include <cmath>
#include <complex>

#include "g2/error.hpp"
#include "g2/forms/calculus.hpp"

namespace g2 {

EigenformFit eigenform_check(const G2Profile& g, int samples) {
  const auto psi = build_psi(g);
  const auto lap = -hodge_laplacian_psi(g);
  const auto pts = g.check_points(samples);

  double num = 0.0, den = 0.0;
  for (double x : pts)
    for (Basis b : kAllBasis) {
      if (psi[b].is_zero() && lap[b].is_zero()) continue;
      const auto p = psi[b].value_at(x), l = lap[b].value_at(x);
      num += (std::conj(p) * l).real();
      den += std::norm(p);
    }
  EigenformFit fit;
  fit.mu2 = den > 0.0 ? num / den : 0.0;
  for (double x : pts)
    for (Basis b : kAllBasis) {
      if (psi[b].is_zero() && lap[b].is_zero()) continue;
      fit.residual = std::max(fit.residual, std::abs(lap[b].value_at(x) - fit.mu2 * psi[b].value_at(x)));
    }
  return fit;
}

CompactIdentity compact_identity_check(const SolitonCandidate& c) {
  if (!c.domain.bounded()) throw DivergentIntegral("volume of an unbounded domain");
  const auto g = c.g2();
  const auto dstar = codifferential(build_psi(g), g);
  CompactIdentity out;
  out.lhs = l2_inner(dstar, dstar, g);
  out.volume = integrate_volume(1.0, g);
  out.rhs = -7.0 * c.lambda * out.volume;
  return out;
}

}  // namespace g2
