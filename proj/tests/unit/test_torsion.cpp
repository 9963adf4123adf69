#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "g2/torsion/torsion.hpp"

using namespace g2;
using std::numbers::pi;

namespace {

const Profile r = Profile::coordinate();
constexpr double kPts[] = {-0.9, -0.25, 0.4, 1.1};

double sup_diff(const Profile& a, const Profile& b) {
  double m = 0.0;
  for (double x : kPts) m = std::max(m, std::abs(a.value_at(x) - b.value_at(x)));
  return m;
}

double sup_form(const InvariantForm& a, std::initializer_list<double> pts) {
  double m = 0.0;
  for (double x : pts) m = std::max(m, a.sup_at(x));
  return m;
}

}  // namespace

TEST_CASE("tau0 and tau1 special values") {
  const auto cy = G2Profile::make(1.0, 0.7, 1.0, StructureKind::CY);
  const auto t = tau01_first_principles(cy);
  CHECK(std::abs(t.tau0.value_at(0.3)) < 1e-15);

  const auto sc = G2Profile::make(sin(r), r / 3.0, 1.0, StructureKind::NK, Domain::interval(0.0, pi));
  const auto ts = tau01_first_principles(sc);
  for (double x : {0.2, 1.0, 2.5}) {
    CHECK(std::abs(ts.tau0.value_at(x) - 4.0) < 1e-12);
    CHECK(std::abs(ts.tau1.value_at(x)) < 1e-12);
  }

  const auto cone = G2Profile::make(r, 0.0, 1.0, StructureKind::NK, Domain::interval(0.5, 3.0));
  const auto tc = tau01_first_principles(cone);
  CHECK(std::abs(tc.tau0.value_at(1.0)) < 1e-15);
  CHECK(std::abs(tc.tau1.value_at(1.0)) < 1e-15);

  const auto lin = tau01_closed(G2Profile::make(1.0, r, 1.0, StructureKind::CY));
  CHECK(lin.tau0.value_at(0.0) == doctest::Approx(12.0 / 7.0));
  const auto nk = tau01_closed(G2Profile::make(1.0, pi / 6, 1.0, StructureKind::NK));
  CHECK(std::abs(nk.tau1.value_at(0.0)) < 1e-15);
  CHECK(nk.tau0.value_at(0.0) == doctest::Approx(24.0 / 7.0));
}

TEST_CASE("closed-form and first-principles torsion agree") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = random_g2_profile(rng, trial % 2 ? StructureKind::NK : StructureKind::CY);
    const auto a = tau01_first_principles(g), b = tau01_closed(g);
    CHECK(sup_diff(a.tau0, b.tau0) < 1e-10);
    CHECK(sup_diff(a.tau1, b.tau1) < 1e-10);
  }
}

TEST_CASE("tau2 vanishes and the torsion reconstructs d phi, d psi") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 10; ++trial) {
    const auto s = trial % 2 ? StructureKind::NK : StructureKind::CY;
    const auto g = random_g2_profile(rng, s);
    const auto [tau2, tau3] = tau2_tau3(g);
    CHECK(sup_form(tau2, {-0.9, 0.1, 0.7}) < 1e-11);

    const auto [tau0, tau1] = tau01_first_principles(g);
    const auto t1 = InvariantForm::basis(Basis::dr, CProfile(tau1));
    const auto phi = build_phi(g), psi = build_psi(g);
    const auto dphi = tau0 * psi + Profile(3.0) * wedge(t1, phi) + star7(tau3, g);
    const auto dpsi = Profile(4.0) * wedge(t1, psi) + star7(tau2, g);
    CHECK(sup_form(d(phi, s) - dphi, {-0.9, 0.1, 0.7}) < 1e-10);
    CHECK(sup_form(d(psi, s) - dpsi, {-0.9, 0.1, 0.7}) < 1e-10);

    const auto purity = tau3_purity(g, tau3);
    CHECK(purity.against_phi < 1e-10);
    CHECK(purity.against_seven < 1e-10);
  }
}

TEST_CASE("tau3 is generally not orthogonal to dr ^ omega") {
  // The invariant part of the 27-dimensional summand mixes dr ^ omega with
  // Re Omega, so only phi and d/dr -| psi are valid purity probes.
  std::mt19937_64 rng(47);
  const auto g = random_g2_profile(rng, StructureKind::NK);
  const auto tau3 = tau2_tau3(g).tau3;
  const auto p = pointwise_inner(tau3, InvariantForm::basis(Basis::dr_omega), g);
  CHECK(std::abs(p.value_at(0.2)) > 1e-3);
}

TEST_CASE("nearly-G2 sine-cone has pure tau0 torsion") {
  const auto sc = G2Profile::make(sin(r), r / 3.0, 1.0, StructureKind::NK, Domain::interval(0.0, pi));
  const auto rep = torsion_report(sc);
  CHECK(rep.tau2_norm < 1e-11);
  CHECK(rep.coclosed_residual < 1e-12);
  CHECK(sup_form(rep.tau3, {0.3, 1.6, 2.7}) < 1e-12);
  const auto gap = d(build_phi(sc), StructureKind::NK) - Profile(4.0) * build_psi(sc);
  CHECK(sup_form(gap, {0.3, 1.6, 2.7}) < 1e-12);
}

TEST_CASE("quadrature-built h keeps identities at the looser tolerance") {
  std::mt19937_64 rng(53);
  const auto g = random_coclosed_profile(rng, StructureKind::NK);
  const auto rep = torsion_report(g);
  CHECK(rep.tau2_norm < 1e-8);
  CHECK(rep.coclosed_residual < 1e-8);
}
