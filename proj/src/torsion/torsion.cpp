#include "g2/torsion/torsion.hpp"

#include <cmath>

namespace g2 {

namespace {

InvariantForm one_form(const Profile& c) { return InvariantForm::basis(Basis::dr, CProfile(c)); }

double sup_over(const std::vector<double>& pts, const Profile& p) {
  double m = 0.0;
  for (double r : pts) m = std::max(m, std::abs(p.value_at(r)));
  return m;
}

}  // namespace

Tau01 tau01_first_principles(const G2Profile& g) {
  const auto phi = build_phi(g);
  const auto dphi = d(phi, g.structure);
  const auto t0 = star7(wedge(phi, dphi), g);
  const auto t1 = star7(wedge(phi, star7(dphi, g)), g);
  return {t0[Basis::one].re / 7.0, t1[Basis::dr].re / 12.0};
}

Tau01 tau01_closed(const G2Profile& g) {
  const Profile dtheta = derivative(g.theta);
  const Profile dh = derivative(g.h);
  if (g.structure == StructureKind::CY) return {12.0 * dtheta / (7.0 * g.G), dh / g.h};
  const Profile three = 3.0 * g.theta;
  return {(12.0 / 7.0) * (dtheta / g.G + 2.0 * sin(three) / g.h), (dh - g.G * cos(three)) / g.h};
}

Tau23 tau2_tau3(const G2Profile& g) {
  const auto phi = build_phi(g);
  const auto psi = build_psi(g);
  const auto [tau0, tau1] = tau01_first_principles(g);
  const auto t1 = one_form(tau1);
  auto tau2 = star7(d(psi, g.structure), g) - Profile(4.0) * star7(wedge(t1, psi), g);
  auto tau3 = star7(d(phi, g.structure), g) - tau0 * phi - Profile(3.0) * star7(wedge(t1, phi), g);
  return {std::move(tau2), std::move(tau3)};
}

TorsionReport torsion_report(const G2Profile& g) {
  const auto [tau0, tau1] = tau01_first_principles(g);
  auto [tau2, tau3] = tau2_tau3(g);
  const auto pts = g.check_points();
  const Profile n2 = pointwise_inner(tau2, tau2, g);
  double t2 = 0.0;
  for (double r : pts) t2 = std::max(t2, std::sqrt(std::max(0.0, n2.value_at(r))));
  return {tau0, tau1, t2, std::move(tau3), sup_over(pts, tau1 / g.G)};
}

Tau3Purity tau3_purity(const G2Profile& g, const InvariantForm& tau3) {
  const auto pts = g.check_points();
  const auto seven = interior_r(build_psi(g), Profile(1.0));
  return {sup_over(pts, pointwise_inner(tau3, build_phi(g), g)), sup_over(pts, pointwise_inner(tau3, seven, g))};
}

}  // namespace g2
