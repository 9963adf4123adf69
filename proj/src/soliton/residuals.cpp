#include "g2/soliton/residuals.hpp"

#include <cmath>
#include <complex>

#include "g2/error.hpp"
#include "g2/forms/calculus.hpp"

namespace g2 {

namespace {

double sup_at(const Profile& p, const std::vector<double>& pts) {
  double m = 0.0;
  for (double x : pts) {
    const double v = std::abs(p.value_at(x));
    if (!std::isfinite(v)) return INFINITY;
    m = std::max(m, v);
  }
  return m;
}

}  // namespace

ResidualReport residuals_cy(const SolitonCandidate& c, int samples, double tol) {
  if (c.structure != StructureKind::CY) throw StructureMismatch("residuals_cy needs a Calabi-Yau candidate");
  const auto pts = c.samples(samples);
  const Profile s3 = sin(3.0 * c.theta), c3 = cos(3.0 * c.theta);
  const CProfile e = cis(3.0 * c.theta);
  const CProfile expr = -(derivative(e) - e * CProfile(c.kprime));

  std::complex<double> b = 0.0;
  for (double x : pts) b += expr.value_at(x);
  b /= static_cast<double>(pts.size());
  const double b1 = b.real(), b2 = b.imag();

  const Profile theta_eq = 3.0 * derivative(c.theta) - b1 * s3 + b2 * c3;
  const Profile kprime_eq = c.kprime - b1 * c3 - b2 * s3;
  const CProfile drift = derivative(expr);
  double d = 0.0;
  for (double x : pts) d = std::max(d, std::abs(drift.value_at(x)));
  return make_report({{"theta_eq", sup_at(theta_eq, pts)}, {"kprime_eq", sup_at(kprime_eq, pts)}, {"b_drift", d}},
                     static_cast<int>(pts.size()), tol);
}

ResidualReport residuals_nk(const SolitonCandidate& c, int samples, double tol) {
  if (c.structure != StructureKind::NK) throw StructureMismatch("residuals_nk needs a nearly Kahler candidate");
  const auto pts = c.samples(samples);
  const double lam = c.lambda;
  const Profile s3 = sin(3.0 * c.theta), c3 = cos(3.0 * c.theta);
  const Profile h2 = c.h * c.h, h3 = h2 * c.h;
  const Profile hs = h3 * s3, hc = h3 * c3;

  const Profile eq1 = derivative(c.h) - c3;
  const Profile eq2 = derivative(derivative(hs)) - 12.0 * c.h * s3 - lam * hs - derivative(c.kprime * hs);
  const Profile eq3 = derivative(hc) - 3.0 * h2 - (lam / 4.0) * h2 * h2 - c.kprime * hc;
  const Profile red = derivative(derivative(hc) - 3.0 * h2) - lam * hc - derivative(c.kprime * hc);
  return make_report({{"eq1", sup_at(eq1, pts)},
                      {"eq2", sup_at(eq2, pts)},
                      {"eq3", sup_at(eq3, pts)},
                      {"redundant", sup_at(red, pts)}},
                     static_cast<int>(pts.size()), tol);
}

ResidualReport form_residual(const SolitonCandidate& c, int samples, double tol) {
  const auto g = c.g2();
  const auto psi = build_psi(g);
  const auto lhs = hodge_laplacian_psi(g);
  const auto res = lhs - d(interior_r(psi, c.kprime), g.structure) - Profile(c.lambda) * psi;
  const auto pts = c.samples(samples);
  std::vector<std::pair<std::string, double>> entries;
  for (Basis b : kAllBasis) {
    if (degree_of(b) != 4) continue;
    double m = 0.0;
    if (!res[b].is_zero())
      for (double x : pts) {
        const double v = std::abs(res[b].value_at(x));
        m = std::isfinite(v) ? std::max(m, v) : INFINITY;
      }
    entries.emplace_back(std::string(tag_of(b)), m);
  }
  return make_report(std::move(entries), static_cast<int>(pts.size()), tol);
}

}  // namespace g2
