#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "g2/error.hpp"
#include "g2/forms/calculus.hpp"
#include "g2/profiles/random.hpp"

using namespace g2;
using std::numbers::pi;
using cplx = std::complex<double>;

namespace {

const Profile r = Profile::coordinate();
constexpr StructureKind kKinds[] = {StructureKind::CY, StructureKind::NK};

InvariantForm e(Basis b) { return InvariantForm::basis(b); }

/// max over sample points of the sup-norm of a - b.
double distance(const InvariantForm& a, const InvariantForm& b, std::initializer_list<double> pts) {
  const auto diff = a - b;
  double m = 0.0;
  for (double x : pts) m = std::max(m, diff.sup_at(x));
  return m;
}

InvariantForm random_form(std::mt19937_64& rng, int degree) {
  InvariantForm f(degree, false);
  for (Basis b : kAllBasis)
    if (degree_of(b) == degree) f.set(b, CProfile(random_angle_profile(rng), random_angle_profile(rng)));
  return f;
}

G2Profile unit_profile(StructureKind s) { return G2Profile::make(1.0, 0.0, 1.0, s); }

}  // namespace

TEST_CASE("basis tags and degrees") {
  for (Basis b : kAllBasis) CHECK(basis_from_tag(tag_of(b)) == b);
  CHECK(degree_of(Basis::dr_Omegabar) == 4);
  CHECK(degree_of(Basis::dr_vol6) == 7);
  CHECK_THROWS_AS(basis_from_tag("Omega2"), ParseError);
  CHECK_THROWS_AS(InvariantForm::basis(Basis::omega).set(Basis::Omega, CProfile(1.0)), DegreeMismatch);
}

TEST_CASE("wedge table") {
  const auto w3 = wedge(e(Basis::omega), e(Basis::omega2_half));
  CHECK(w3[Basis::vol6].value_at(0.0) == cplx(3.0));
  CHECK(wedge(e(Basis::omega), e(Basis::omega))[Basis::omega2_half].value_at(0.0) == cplx(2.0));
  CHECK(wedge(e(Basis::Omega), e(Basis::Omega)).is_structurally_zero());
  CHECK(wedge(e(Basis::Omega), e(Basis::omega)).is_structurally_zero());
  const auto v = CProfile(cplx(0, 1.0 / 8.0)) * wedge(e(Basis::Omega), e(Basis::Omegabar));
  CHECK(std::abs(v[Basis::vol6].value_at(0.0) - 1.0) < 1e-15);
  CHECK(wedge(e(Basis::dr), e(Basis::dr)).is_structurally_zero());

  const auto over = wedge(e(Basis::omega2_half), e(Basis::omega2_half));
  CHECK(over.overflow());
  CHECK(over.is_structurally_zero());
  CHECK_THROWS_AS(wedge(e(Basis::omega2_half), e(Basis::omega2_half), true), DegreeOverflow);
}

TEST_CASE("wedge is graded commutative on all basis pairs") {
  for (Basis x : kAllBasis)
    for (Basis y : kAllBasis) {
      if (degree_of(x) + degree_of(y) > 7) continue;
      const double sign = (degree_of(x) * degree_of(y)) % 2 == 0 ? 1.0 : -1.0;
      const auto lhs = wedge(e(x), e(y));
      const auto rhs = Profile(sign) * wedge(e(y), e(x));
      CAPTURE(tag_of(x));
      CAPTURE(tag_of(y));
      CHECK(distance(lhs, rhs, {0.0}) == 0.0);
    }
}

TEST_CASE("d squares to zero") {
  for (auto s : kKinds) {
    for (Basis b : kAllBasis) {
      const auto f = InvariantForm::basis(b, CProfile(sin(r) * exp(r), cos(2.0 * r)));
      CHECK(distance(d(d(f, s), s), InvariantForm(std::min(7, degree_of(b) + 2)), {-0.5, 0.3, 1.1}) < 1e-13);
    }
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
      const int k = trial % 6;
      const auto f = random_form(rng, k);
      const auto dd = d(d(f, s), s);
      CHECK(distance(dd, InvariantForm(k + 2), {-0.7, 0.2, 0.9}) < 1e-13);
    }
  }
}

TEST_CASE("d of phi and psi matches the closed-form coefficients") {
  std::mt19937_64 rng(17);
  for (auto s : kKinds)
    for (int trial = 0; trial < 10; ++trial) {
      const auto g = random_g2_profile(rng, s);
      CHECK(distance(d(build_phi(g), s), dphi_closed(g), {-1.3, 0.1, 0.8}) < 1e-12);
      CHECK(distance(d(build_psi(g), s), dpsi_closed(g), {-1.3, 0.1, 0.8}) < 1e-12);
    }
  // CY with F = e^{i r/3}: d phi = ((F^3)'/2) dr^Omega + c.c. = (i e^{ir}/2) dr^Omega + c.c.
  const auto g = G2Profile::make(1.0, r / 3.0, 1.0, StructureKind::CY);
  const auto dphi = d(build_phi(g), StructureKind::CY);
  CHECK(std::abs(dphi[Basis::dr_Omega].value_at(0.4) - cplx(0, 0.5) * std::exp(cplx(0, 0.4))) < 1e-15);
}

TEST_CASE("star7 table") {
  const auto one = unit_profile(StructureKind::CY);
  const auto s1 = star7(e(Basis::dr_omega2_half), one);
  CHECK(distance(s1, e(Basis::omega), {0.0}) < 1e-15);

  const auto g = G2Profile::make(2.0, 0.0, 3.0, StructureKind::NK);
  const auto sv = star7(e(Basis::vol6), g);
  CHECK(sv.degree() == 1);
  CHECK(std::abs(sv[Basis::dr].value_at(0.0) - 3.0 / 64.0) < 1e-16);
  CHECK(std::abs(star7(e(Basis::Omega), g)[Basis::dr_Omega].value_at(0.0) - cplx(0, 3.0)) < 1e-15);
  CHECK(std::abs(star7(e(Basis::dr_Omega), g)[Basis::Omega].value_at(0.0) - cplx(0, -1.0 / 3.0)) < 1e-15);
  CHECK(std::abs(star7(e(Basis::one), g)[Basis::dr_vol6].value_at(0.0) - 192.0) < 1e-12);
}

TEST_CASE("star7 is an involutive isometry") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 8; ++trial) {
    const auto g = random_g2_profile(rng, kKinds[trial % 2]);
    for (Basis b : kAllBasis) {
      const auto a = InvariantForm::basis(b, CProfile(random_angle_profile(rng), random_angle_profile(rng)));
      CHECK(distance(star7(star7(a, g), g), a, {-0.4, 0.6}) < 1e-12);
      const auto n1 = pointwise_inner(a, a, g), n2 = pointwise_inner(star7(a, g), star7(a, g), g);
      for (double x : {-0.4, 0.6}) CHECK(std::abs(n1.value_at(x) - n2.value_at(x)) < 1e-12 * std::max(1.0, n1.value_at(x)));
    }
  }
}

TEST_CASE("interior product with d/dr") {
  CHECK(distance(interior_r(e(Basis::dr_Omega), 1.0), e(Basis::Omega), {0.0}) == 0.0);
  CHECK(interior_r(e(Basis::omega), 1.0).is_structurally_zero());
  const auto kp = sin(r);
  const auto g = G2Profile::make(1.5 + 0.5 * cos(r), r / 2.0, 1.0, StructureKind::NK);
  const auto got = interior_r(build_psi(g), kp);
  const auto F3 = g.F3();
  InvariantForm expect(3);
  expect.set(Basis::Omega, times_i(F3 * CProfile(kp)) / Profile(2.0));
  expect.set(Basis::Omegabar, -times_i(conj(F3) * CProfile(kp)) / Profile(2.0));
  CHECK(distance(got, expect, {-1.0, 0.3, 2.0}) < 1e-14);
  CHECK_THROWS_AS(interior_r(e(Basis::one), 1.0), DegreeMismatch);
}

TEST_CASE("phi, psi and their norms") {
  const auto psi = build_psi(unit_profile(StructureKind::CY));
  CHECK(psi[Basis::dr_Omega].value_at(0.0) == cplx(0, 0.5));
  CHECK(psi[Basis::dr_Omegabar].value_at(0.0) == cplx(0, -0.5));
  CHECK(psi[Basis::omega2_half].value_at(0.0) == cplx(-1.0));
  CHECK(psi.real());

  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = random_g2_profile(rng, kKinds[trial % 2]);
    const auto phi = build_phi(g);
    const auto psi_g = build_psi(g);
    CHECK(distance(star7(phi, g), psi_g, {-1.0, 0.0, 1.0}) < 1e-12);
    for (double x : {-0.8, 0.5}) {
      CHECK(std::abs(pointwise_inner(phi, phi, g).value_at(x) - 7.0) < 1e-12);
      CHECK(std::abs(pointwise_inner(psi_g, psi_g, g).value_at(x) - 7.0) < 1e-12);
      CHECK(phi.reality_defect(x) == 0.0);
    }
  }
}

TEST_CASE("pointwise and L2 inner products") {
  const auto g = G2Profile::make(1.0, 0.0, 2.0 + sin(r), StructureKind::CY, Domain::circle(2 * pi));
  const auto n = pointwise_inner(e(Basis::dr), e(Basis::dr), g);
  for (double x : {0.0, 1.0}) CHECK(std::abs(n.value_at(x) - 1.0 / std::pow(2.0 + std::sin(x), 2)) < 1e-15);
  CHECK_THROWS_AS(pointwise_inner(e(Basis::omega), e(Basis::Omega), g), DegreeMismatch);
  CHECK(std::abs(pointwise_inner(e(Basis::Omega), e(Basis::Omega), g).value_at(0.3) - 8.0) < 1e-14);
  // |psi|^2 = 7, so the L2 norm is 7 Vol(M) = 7 * int_0^{2 pi} G dr = 28 pi.
  const auto psi = build_psi(g);
  CHECK(std::abs(l2_inner(psi, psi, g) - 28.0 * pi) < 1e-10);
}

TEST_CASE("Hodge Laplacian of psi") {
  // Torsion-free CY product.
  const auto flat = G2Profile::make(1.0, 0.3, 1.0, StructureKind::CY, Domain::circle(2 * pi));
  CHECK(hodge_laplacian_psi(flat).is_structurally_zero());

  // Cone over a nearly Kahler manifold.
  const auto cone = G2Profile::make(r, 0.0, 1.0, StructureKind::NK, Domain::interval(0.5, 2.0));
  CHECK(distance(hodge_laplacian_psi(cone), InvariantForm(4), {0.7, 1.3, 1.9}) < 1e-13);

  // Sine-cone: eigenform with eigenvalue 16.
  const auto sc = G2Profile::make(sin(r), r / 3.0, 1.0, StructureKind::NK, Domain::interval(0.0, pi));
  const auto lap = hodge_laplacian_psi(sc);
  CHECK(distance(lap, Profile(-16.0) * build_psi(sc), {0.3, 1.5, 2.8}) < 1e-12);

  const auto bad = G2Profile::make(1.0 + 0.1 * sin(r), 0.0, 1.0, StructureKind::NK, Domain::interval(0.0, 1.0));
  CHECK_THROWS_AS(hodge_laplacian_psi(bad), ConstraintViolated);
}

TEST_CASE("closed-form Laplacian agrees with the form calculus") {
  std::mt19937_64 rng(31);
  for (auto s : kKinds)
    for (int trial = 0; trial < 5; ++trial) {
      const auto g = random_coclosed_profile(rng, s);
      CHECK(coclosed_defect(g) < 1e-14);
      CHECK(distance(hodge_laplacian_psi(g), hodge_laplacian_psi_closed(g), {-0.9, -0.2, 0.4, 0.95}) < 1e-8);
    }
}

TEST_CASE("codifferential conventions") {
  std::mt19937_64 rng(37);
  const auto g = random_coclosed_profile(rng, StructureKind::NK);
  const auto shortcut = star7(d(build_phi(g), g.structure), g);
  CHECK(distance(codifferential(build_psi(g), g), shortcut, {-0.5, 0.5}) < 1e-10);

  // On functions the Hodge Laplacian is minus the rough Laplacian.
  const auto f = sin(r) * r;
  const auto gg = random_g2_profile(rng, StructureKind::CY);
  const auto lap = hodge_laplacian(InvariantForm::basis(Basis::one, CProfile(f)), gg);
  for (double x : {-0.3, 0.8}) {
    const auto jf = f.jet_at(x), jh = gg.h.jet_at(x), jG = gg.G.jet_at(x);
    const double rough = jf[2] / (jG[0] * jG[0]) + 6.0 * jh[1] * jf[1] / (jh[0] * jG[0] * jG[0]) -
                         jf[1] * jG[1] / std::pow(jG[0], 3);
    CHECK(std::abs(lap[Basis::one].value_at(x).real() + rough) < 1e-12);
  }
}

TEST_CASE("form JSON round trip") {
  const auto psi = build_psi(G2Profile::make(sin(r) + 2.0, r, 1.0, StructureKind::NK));
  const auto j = form_to_json(psi);
  CHECK(j["degree"] == 4);
  CHECK(j["entries"].size() == 3);
  const auto back = form_from_json(nlohmann::json::parse(j.dump()));
  CHECK(distance(back, psi, {0.2, 1.7}) == 0.0);
}
