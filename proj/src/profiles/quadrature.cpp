#include "g2/profiles/quadrature.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "g2/error.hpp"

namespace g2 {

namespace {

struct SimpsonState {
  const std::function<double(double)>& f;
  int max_depth;
  long evaluations = 0;
  double error = 0.0;
};

double simpson_step(SimpsonState& st, double a, double b, double fa, double fm, double fb,
                    double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = st.f(lm);
  const double frm = st.f(rm);
  st.evaluations += 2;
  if (!std::isfinite(flm) || !std::isfinite(frm))
    throw QuadratureFailure("non-finite integrand value");
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol || (b - a) < 1e-14 * std::max(1.0, std::abs(a))) {
    st.error += std::abs(delta) / 15.0;
    return left + right + delta / 15.0;
  }
  if (depth >= st.max_depth)
    throw QuadratureFailure("adaptive Simpson exceeded its depth limit before meeting tolerance");
  return simpson_step(st, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
         simpson_step(st, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

struct GaussRule {
  static constexpr int kPoints = 16;
  std::array<double, kPoints> x{};
  std::array<double, kPoints> w{};

  GaussRule() {
    const int n = kPoints;
    for (int i = 0; i < n; ++i) {
      double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = z;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (z * p1 - p0) / (z * z - 1.0);
        const double dz = p1 / dp;
        z -= dz;
        if (std::abs(dz) < 1e-16) break;
      }
      x[i] = z;
      w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
  }
};

const GaussRule& gauss_rule() {
  static const GaussRule rule;
  return rule;
}

}  // namespace

QuadratureResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                  double tol, int max_depth) {
  if (a == b) return {};
  double sign = 1.0;
  if (b < a) {
    std::swap(a, b);
    sign = -1.0;
  }
  SimpsonState st{f, max_depth};
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  st.evaluations = 3;
  if (!std::isfinite(fa) || !std::isfinite(fb) || !std::isfinite(fm))
    throw QuadratureFailure("non-finite integrand value");
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double v = simpson_step(st, a, b, fa, fm, fb, whole, tol, 0);
  return {sign * v, st.error, st.evaluations};
}

double gauss_legendre(const std::function<double(double)>& f, double a, double b, int panels) {
  const auto& rule = gauss_rule();
  const double width = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * width;
    const double mid = lo + 0.5 * width;
    double s = 0.0;
    for (int i = 0; i < GaussRule::kPoints; ++i) s += rule.w[i] * f(mid + 0.5 * width * rule.x[i]);
    total += 0.5 * width * s;
  }
  return total;
}

QuadratureResult integrate_open(const std::function<double(double)>& f, double a, double b,
                                double rel_tol, int max_panels) {
  int panels = 8;
  double prev = gauss_legendre(f, a, b, panels);
  long evals = panels * GaussRule::kPoints;
  while (panels < max_panels) {
    panels *= 2;
    const double cur = gauss_legendre(f, a, b, panels);
    evals += panels * GaussRule::kPoints;
    if (!std::isfinite(cur)) throw DivergentIntegral("integrand is not finite on the domain");
    const double diff = std::abs(cur - prev);
    if (diff <= rel_tol * std::max(std::abs(cur), 1e-300) || diff <= 1e-15) return {cur, diff, evals};
    prev = cur;
  }
  throw DivergentIntegral("Gauss-Legendre panel doubling did not converge");
}

}  // namespace g2
