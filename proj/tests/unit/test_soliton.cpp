#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "doctest.h"
#include "g2/error.hpp"
#include "g2/soliton/soliton.hpp"
#include "g2/torsion/torsion.hpp"

using namespace g2;
using std::numbers::pi;

namespace {

const Profile r = Profile::coordinate();

ReducedState sine_jets(double x) { return {std::sin(x), std::cos(x), -std::sin(x)}; }

SolitonCandidate custom(Profile h, Profile theta, Profile kprime, double lambda, StructureKind s, Domain d) {
  SolitonCandidate c;
  c.h = h.on(d);
  c.theta = theta.on(d);
  c.kprime = kprime.on(d);
  c.lambda = lambda;
  c.structure = s;
  c.family = Family::Custom;
  c.domain = d;
  return c;
}

ShootConfig sine_cone_shot() {
  ShootConfig cfg;
  cfg.start = sine_jets(pi / 8);
  cfg.r0 = pi / 8;
  cfg.r1 = 3 * pi / 8;
  cfg.target = std::cos(3 * pi / 8);
  cfg.lambda_lo = -20.0;
  cfg.lambda_hi = -12.0;
  return cfg;
}

}  // namespace

TEST_CASE("CY closed form") {
  const auto flat = cy_closed_form(2.0, 0.0);
  CHECK(flat.theta.value_at(0.7) == 0.0);
  CHECK(flat.kprime.value_at(0.7) == doctest::Approx(2.0));
  CHECK(flat.lambda == 0.0);

  const auto still = cy_closed_form(0.0, 0.5);
  CHECK(still.theta.value_at(1.3) == doctest::Approx(2.0 / 3.0 * std::atan(0.5)));
  CHECK(still.kprime.value_at(1.3) == 0.0);

  const auto c = cy_closed_form(1.0, 1.0);
  const auto j = c.theta.jet_at(0.0);
  CHECK(j.value == doctest::Approx(pi / 6));
  CHECK(j.derivs[0] == doctest::Approx(1.0 / 3.0));
  CHECK(std::abs(c.kprime.value_at(0.0)) < 1e-15);
  CHECK(std::abs(3.0 * j.derivs[0] - std::sin(3.0 * j.value)) < 1e-15);
  CHECK(c.lambda == 0.0);
  CHECK(c.soliton_type() == "steady");
}

TEST_CASE("CY residuals") {
  const auto rep = residuals_cy(cy_closed_form(1.0, 1.0));
  CHECK(rep.passed);
  CHECK(rep.worst() < 1e-10);
  CHECK(rep.samples == 200);

  const auto line = Domain::line();
  const auto bad = residuals_cy(custom(1.0, r, 0.0, 0.0, StructureKind::CY, line));
  CHECK_FALSE(bad.passed);
  CHECK(bad.at("b_drift") > 1.0);

  const auto trivial = residuals_cy(custom(1.0, 0.4, 0.8, 0.0, StructureKind::CY, line));
  CHECK(trivial.worst() < 1e-15);

  CHECK_THROWS_AS(residuals_cy(nk_special(Family::SineCone)), StructureMismatch);
}

TEST_CASE("NK special families") {
  const auto cyl = nk_special(Family::Cylinder, {1.0, 0.0});
  CHECK(cyl.lambda == -12.0);
  CHECK(cyl.soliton_type() == "shrinking");
  CHECK(nk_special(Family::Cylinder, {2.0, 0.3}).lambda == doctest::Approx(-3.0));

  const auto sc = nk_special(Family::SineCone);
  CHECK(sc.lambda == -16.0);
  CHECK(sc.kprime.value_at(1.0) == 0.0);
  CHECK(sc.domain == Domain::interval(0.0, pi));

  SpecialParams cone;
  cone.domain = Domain::interval(0.0, 5.0);
  const auto tc = tau01_closed(nk_special(Family::Cone, cone).g2());
  for (double x : {0.5, 2.0, 4.5}) {
    CHECK(std::abs(tc.tau0.value_at(x)) < 1e-15);
    CHECK(std::abs(tc.tau1.value_at(x)) < 1e-15);
  }

  CHECK_THROWS_AS(nk_special(Family::Cylinder, {0.0, 0.0}), InvalidParams);
  SpecialParams off;
  off.domain = Domain::interval(-1.0, 1.0);
  CHECK_THROWS_AS(nk_special(Family::SineCone, off), InvalidParams);
  CHECK_THROWS_AS(nk_special(Family::Cone, off), InvalidParams);
  CHECK_THROWS_AS(nk_special(Family::OdeTrajectory), InvalidParams);
}

TEST_CASE("special families solve the NK system and the form equation") {
  for (double lambda : {-3.0, 0.0, 2.5}) {
    for (Family f : {Family::Cone, Family::AntiCone, Family::Cylinder, Family::SineCone}) {
      SpecialParams p;
      p.b = f == Family::Cylinder ? 1.5 : 0.7;
      p.c = 0.4;
      p.lambda = lambda;
      const auto c = nk_special(f, p);
      const auto rep = residuals_nk(c);
      CHECK(rep.samples == 200);
      CHECK(rep.worst() < 1e-10);
      CHECK(form_residual(c).worst() < 1e-9);
    }
  }
}

TEST_CASE("NK residual examples") {
  auto cyl = nk_special(Family::Cylinder, {1.0, 0.0});
  cyl.lambda = 0.0;
  CHECK(residuals_nk(cyl).at("eq3") == doctest::Approx(3.0));

  SpecialParams p;
  p.lambda = 7.3;
  CHECK(residuals_nk(nk_special(Family::Cone, p)).worst() < 1e-12);
}

TEST_CASE("redundant equation is eq3' + lambda h^3 eq1") {
  // A non-soliton, so every residual is nonzero.
  const auto d = Domain::interval(0.2, 1.4);
  const auto c = custom(1.0 + 0.3 * r, 0.2 * sin(r), 0.5 * r, -4.0, StructureKind::NK, d);
  const Profile c3 = cos(3.0 * c.theta), h3 = pow(c.h, 3);
  const Profile e1 = derivative(c.h) - c3;
  const Profile e3 = derivative(h3 * c3) - 3.0 * c.h * c.h - 1.0 * pow(c.h, 4) * (c.lambda / 4.0) - c.kprime * h3 * c3;
  const Profile red = derivative(derivative(h3 * c3) - 3.0 * c.h * c.h) - c.lambda * h3 * c3 - derivative(c.kprime * h3 * c3);
  for (double x : {0.3, 0.8, 1.3}) {
    CHECK(std::abs(red.value_at(x) - derivative(e3).value_at(x) - c.lambda * h3.value_at(x) * e1.value_at(x)) < 1e-12);
  }
  const auto rep = residuals_nk(c);
  CHECK(rep.at("redundant") > 1e-3);
  CHECK_FALSE(rep.passed);
}

TEST_CASE("form residual") {
  CHECK(form_residual(nk_special(Family::SineCone)).worst() < 1e-9);
  CHECK(form_residual(cy_closed_form(1.0, 1.0)).worst() < 1e-9);
  const auto flat = custom(1.0, 0.2, 0.0, 0.0, StructureKind::CY, Domain::circle(2 * pi));
  CHECK(form_residual(flat).worst() == 0.0);

  const auto tilted = custom(1.0 + 0.1 * r, 0.0, 0.0, 0.0, StructureKind::CY, Domain::interval(0.0, 1.0));
  CHECK_THROWS_AS(form_residual(tilted), ConstraintViolated);
}

TEST_CASE("reduced right-hand side") {
  const double s = std::sqrt(0.5);
  CHECK(reduced_rhs({s, s, -s}, -16.0) == doctest::Approx(-s).epsilon(1e-14));
  CHECK_THROWS_AS(reduced_rhs({1.0, 1.0, 0.0}, 0.0), SingularLocus);
  CHECK_THROWS_AS(reduced_rhs({1.0, 0.0, 0.3}, 0.0), SingularLocus);
  CHECK_THROWS_AS(reduced_rhs({-1.0, 0.5, 0.3}, 0.0), SingularLocus);

  std::mt19937_64 rng(83);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const ReducedState y{0.3 + 2.0 * u(rng), (u(rng) < 0.5 ? -1.0 : 1.0) * (0.05 + 0.9 * u(rng)), 4.0 * u(rng) - 2.0};
    const double lambda = 40.0 * u(rng) - 20.0;
    CHECK(std::abs(reduced_polynomial(y, reduced_rhs(y, lambda), lambda)) < 1e-12);
  }
}

TEST_CASE("reduced ODE reproduces the sine-cone") {
  const auto t = integrate_reduced(sine_jets(pi / 8), -16.0, pi / 8, 3 * pi / 8);
  CHECK(t.status() == ReducedStatus::Completed);
  CHECK(t.r_end() == 3 * pi / 8);
  double err = 0.0;
  for (int i = 0; i <= 500; ++i) {
    const double x = pi / 8 + (pi / 4) * i / 500;
    const auto y = t.at(x);
    err = std::max({err, std::abs(y.h - std::sin(x)), std::abs(y.dh - std::cos(x))});
  }
  CHECK(err < 1e-8);

  // h' = cos r reaches the locus h' = 0 at pi/2, so the run stops short.
  const auto past = integrate_reduced(sine_jets(3 * pi / 8), -16.0, 3 * pi / 8, 2.0);
  CHECK(past.status() == ReducedStatus::SingularLocus);
  CHECK(past.r_end() < pi / 2);
  CHECK(past.r_end() > pi / 2 - 1e-3);
  CHECK(std::abs(past.at(past.r_end()).dh) < 2e-4);

  CHECK_THROWS_AS(integrate_reduced({1.0, 1.0, 0.0}, 0.0, 1.0, 2.0), SingularLocus);
}

TEST_CASE("dense output satisfies the reduced ODE") {
  std::mt19937_64 rng(89);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ReducedOptions tight;
  tight.rtol = 1e-12;
  tight.atol = 1e-14;
  // Runs that stop at the locus are excluded: the leading coefficient vanishes
  // there and the residual loses digits in proportion.
  for (int done = 0; done < 5;) {
    const ReducedState y{0.5 + u(rng), 0.2 + 0.6 * u(rng), u(rng) - 0.5};
    const double lambda = 30.0 * u(rng) - 20.0;
    const auto t = integrate_reduced(y, lambda, 0.0, 1.0, tight);
    if (t.status() != ReducedStatus::Completed) continue;
    ++done;
    double res = 0.0;
    for (int i = 0; i <= 300; ++i) {
      const double x = t.r_begin() + (t.r_end() - t.r_begin()) * i / 300;
      res = std::max(res, std::abs(reduced_polynomial(t.at(x), t.derivative_at(x).d2h, lambda)));
    }
    CHECK(res < 1e-9);
  }
}

TEST_CASE("theta and k' recovery") {
  const auto t = integrate_reduced(sine_jets(pi / 8), -16.0, pi / 8, 3 * pi / 8);
  const auto rec = recover_theta_k(t, 1);
  const auto& c = rec.candidate;
  CHECK(c.family == Family::OdeTrajectory);
  CHECK(c.h.mesh()->n == 401);
  double dt = 0.0, dk = 0.0;
  for (double x : c.samples()) {
    dt = std::max(dt, std::abs(c.theta.value_at(x) - x / 3.0));
    dk = std::max(dk, std::abs(c.kprime.value_at(x)));
  }
  CHECK(dt < 1e-7);
  CHECK(dk < 1e-7);
  CHECK(rec.sign_check < 1e-6);
  CHECK(residuals_nk(c, 200, 1e-6).passed);
  CHECK(form_residual(c, 200, 1e-5).passed);

  // sin 3theta -> -sin 3theta maps solitons to solitons: the flipped branch
  // recovers the mirror solution theta = -r/3 rather than failing.
  const auto flip = recover_theta_k(t, -1).candidate;
  CHECK(std::abs(flip.theta.value_at(flip.samples()[7]) + flip.samples()[7] / 3.0) < 1e-7);
  CHECK(residuals_nk(flip, 200, 1e-6).passed);

  CHECK_THROWS_AS(recover_theta_k(t, 0), InvalidParams);
}

TEST_CASE("recovery passes the full system along random trajectories") {
  std::mt19937_64 rng(97);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int done = 0; done < 4;) {
    const ReducedState y{0.5 + u(rng), 0.2 + 0.6 * u(rng), u(rng) - 0.5};
    const double lambda = 30.0 * u(rng) - 20.0;
    const auto t = integrate_reduced(y, lambda, 0.0, 0.8);
    if (t.status() != ReducedStatus::Completed) continue;
    const auto rec = recover_theta_k(t, done % 2 ? 1 : -1, 121);
    CHECK(residuals_nk(rec.candidate, 200, 1e-10).passed);
    ++done;
  }
}

TEST_CASE("eigenform check") {
  const auto sc = eigenform_check(nk_special(Family::SineCone).g2());
  CHECK(sc.mu2 == doctest::Approx(16.0).epsilon(1e-10));
  CHECK(sc.residual < 1e-8);

  const auto flat = eigenform_check(G2Profile::make(1.0, 0.3, 1.0, StructureKind::CY));
  CHECK(flat.mu2 == 0.0);
  CHECK(flat.residual == 0.0);

  CHECK(eigenform_check(cy_closed_form(1.0, 1.0).g2()).residual > 1e-2);
}

TEST_CASE("compact soliton identity") {
  const auto sc = compact_identity_check(nk_special(Family::SineCone));
  CHECK(sc.ratio() == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(sc.lhs / sc.volume == doctest::Approx(112.0).epsilon(1e-6));
  CHECK(sc.volume == doctest::Approx(5.0 * pi / 16.0).epsilon(1e-10));

  const auto flat = compact_identity_check(custom(1.0, 0.1, 0.0, 0.0, StructureKind::CY, Domain::circle(2 * pi)));
  CHECK(flat.lhs == 0.0);
  CHECK(flat.rhs == 0.0);

  const auto cyl = compact_identity_check(nk_special(Family::Cylinder, {1.0, 0.0}));
  CHECK(cyl.lhs / cyl.volume == doctest::Approx(84.0).epsilon(1e-10));
  CHECK(cyl.rhs / cyl.volume == doctest::Approx(84.0).epsilon(1e-12));

  CHECK_THROWS_AS(compact_identity_check(cy_closed_form(1.0, 1.0)), DivergentIntegral);
}

TEST_CASE("shooting recovers the sine-cone constant") {
  const auto res = shoot(sine_cone_shot());
  REQUIRE(res.status == ShootStatus::Found);
  CHECK(std::abs(res.lambda + 16.0) < 1e-6);
  REQUIRE(res.report);
  CHECK(res.report->passed);
  CHECK(res.f_lo < 0.0);
  CHECK(res.f_hi > 0.0);

  auto infeasible = sine_cone_shot();
  infeasible.lambda_lo = -12.0;
  infeasible.lambda_hi = -8.0;
  const auto nf = shoot(infeasible);
  CHECK(nf.status == ShootStatus::NotFound);
  CHECK(nf.f_lo > 0.0);
  CHECK(nf.f_hi > 0.0);

  auto perturbed = sine_cone_shot();
  perturbed.target += 1e-3;
  const auto pr = shoot(perturbed);
  CHECK(pr.status == ShootStatus::Found);
  CHECK(std::abs(pr.lambda + 16.0) < 0.5);
  CHECK(std::abs(pr.lambda + 16.0) > 1e-4);

  auto past = sine_cone_shot();
  past.r1 = pi / 2 + 0.2;
  CHECK_THROWS_AS(shoot(past), NoBracket);
}

TEST_CASE("reports and artifacts") {
  CHECK(family_from_name("SineCone") == Family::SineCone);
  CHECK_THROWS_AS(family_from_name("Sphere"), InvalidParams);

  const auto rep = make_report({{"a", 1e-12}, {"b", NAN}}, 5, 1e-10);
  CHECK_FALSE(rep.passed);
  CHECK(std::isinf(rep.worst()));
  const auto j = report_to_json(rep);
  CHECK(j["residuals"]["b"] == "inf");
  CHECK(j["samples"] == 5);

  std::ostringstream os;
  write_candidate_csv(os, nk_special(Family::SineCone), {pi / 2});
  CHECK(os.str() == "r,h,theta,kprime\n1.5707963267948966,1,0.52359877559829882,0\n");
}
