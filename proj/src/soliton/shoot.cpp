#include "g2/soliton/shoot.hpp"

#include <cmath>

#include "g2/error.hpp"

namespace g2 {

namespace {

double pick(const ReducedState& y, ShootConfig::Quantity q) {
  switch (q) {
    case ShootConfig::Quantity::h: return y.h;
    case ShootConfig::Quantity::dh: return y.dh;
    case ShootConfig::Quantity::d2h: return y.d2h;
  }
  return NAN;
}

}  // namespace

std::string_view status_name(ShootStatus s) {
  switch (s) {
    case ShootStatus::Found: return "Found";
    case ShootStatus::NotFound: return "NotFound";
    case ShootStatus::NotConverged: return "NotConverged";
  }
  return "?";
}

double closing_functional(const ShootConfig& cfg, double lambda) {
  const auto t = integrate_reduced(cfg.start, lambda, cfg.r0, cfg.r1, cfg.ode);
  if (t.status() != ReducedStatus::Completed)
    throw NoBracket("trajectory for lambda = " + std::to_string(lambda) + " stopped at r = " +
                    std::to_string(t.r_end()) + " (" + std::string(status_name(t.status())) + ")");
  return pick(t.at(cfg.r1), cfg.quantity) - cfg.target;
}

ShootResult shoot(const ShootConfig& cfg) {
  if (!(cfg.lambda_lo < cfg.lambda_hi)) throw InvalidParams("lambda bracket must satisfy lo < hi");
  ShootResult res;
  double a = cfg.lambda_lo, b = cfg.lambda_hi;
  double fa = closing_functional(cfg, a), fb = closing_functional(cfg, b);
  res.bracket_lo = a;
  res.bracket_hi = b;
  res.f_lo = fa;
  res.f_hi = fb;
  if (fa == 0.0 || fb == 0.0) {
    res.lambda = fa == 0.0 ? a : b;
    res.closing = 0.0;
  } else if ((fa > 0.0) == (fb > 0.0)) {
    res.status = ShootStatus::NotFound;
    res.message = "closing functional has the same sign at both ends of the bracket";
    return res;
  } else {
    // Bisection until the bracket is 1e-3 of its initial width.
    const double coarse = 1e-3 * (b - a);
    int it = 0;
    while (b - a > coarse && it < cfg.max_iterations) {
      const double m = 0.5 * (a + b);
      const double fm = closing_functional(cfg, m);
      ++it;
      if (fm == 0.0) {
        a = b = m;
        fa = fb = 0.0;
        break;
      }
      if ((fm > 0.0) == (fa > 0.0)) {
        a = m;
        fa = fm;
      } else {
        b = m;
        fb = fm;
      }
    }
    // Secant from the bracket ends, falling back to bisection whenever the
    // secant iterate leaves the bracket.
    double x0 = a, f0 = fa, x1 = b, f1 = fb;
    double x = 0.5 * (a + b);
    bool converged = a == b;
    while (!converged && it < cfg.max_iterations) {
      double next = x1 - f1 * (x1 - x0) / (f1 - f0);
      if (!(next > a && next < b)) next = 0.5 * (a + b);
      const double fn = closing_functional(cfg, next);
      ++it;
      if ((fn > 0.0) == (fa > 0.0)) {
        a = next;
        fa = fn;
      } else {
        b = next;
        fb = fn;
      }
      converged = std::abs(next - x1) < cfg.lambda_tol || fn == 0.0 || b - a < cfg.lambda_tol;
      x0 = x1;
      f0 = f1;
      x1 = next;
      f1 = fn;
      x = next;
    }
    res.iterations = it;
    res.lambda = x;
    res.closing = closing_functional(cfg, x);
    if (!converged) {
      res.status = ShootStatus::NotConverged;
      res.message = "iteration budget exhausted";
      return res;
    }
  }

  const auto t = integrate_reduced(cfg.start, res.lambda, cfg.r0, cfg.r1, cfg.ode);
  auto rec = recover_theta_k(t, cfg.u_sign);
  res.report = residuals_nk(rec.candidate, 200, cfg.residual_tol);
  res.candidate = std::move(rec.candidate);
  res.status = res.report->passed ? ShootStatus::Found : ShootStatus::NotConverged;
  if (!res.report->passed) res.message = "recovered candidate fails the residual tolerance";
  return res;
}

}  // namespace g2
