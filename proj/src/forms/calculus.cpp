#include "g2/forms/calculus.hpp"

#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "g2/error.hpp"
#include "g2/profiles/quadrature.hpp"

namespace g2 {

namespace {

using cplx = std::complex<double>;
constexpr cplx I{0.0, 1.0};

struct Term {
  cplx c;
  Basis b;
};

// Products of pure N-forms. Omega is primitive, so Omega ^ omega = 0, and
// every product past degree 6 vanishes.
std::optional<Term> n_product(Basis x, Basis y) {
  if (x == Basis::one) return Term{1.0, y};
  if (y == Basis::one) return Term{1.0, x};
  if (x == Basis::omega && y == Basis::omega) return Term{2.0, Basis::omega2_half};
  if ((x == Basis::omega && y == Basis::omega2_half) || (x == Basis::omega2_half && y == Basis::omega))
    return Term{3.0, Basis::vol6};
  if (x == Basis::Omega && y == Basis::Omegabar) return Term{-8.0 * I, Basis::vol6};
  if (x == Basis::Omegabar && y == Basis::Omega) return Term{8.0 * I, Basis::vol6};
  return std::nullopt;
}

std::vector<Term> n_derivative(Basis n, StructureKind s) {
  if (s == StructureKind::CY) return {};
  switch (n) {
    case Basis::omega: return {{-1.5, Basis::Omega}, {-1.5, Basis::Omegabar}};
    case Basis::Omega: return {{4.0 * I, Basis::omega2_half}};
    case Basis::Omegabar: return {{-4.0 * I, Basis::omega2_half}};
    default: return {};
  }
}

Term n_star(Basis n) {
  switch (n) {
    case Basis::one: return {1.0, Basis::vol6};
    case Basis::omega: return {1.0, Basis::omega2_half};
    case Basis::Omega: return {-I, Basis::Omega};
    case Basis::Omegabar: return {I, Basis::Omegabar};
    case Basis::omega2_half: return {1.0, Basis::omega};
    case Basis::vol6: return {1.0, Basis::one};
    default: throw DegreeMismatch("not a pure N-form");
  }
}

CProfile scaled(cplx c, const CProfile& f) {
  if (c.imag() == 0.0) return CProfile(Profile(c.real())) * f;
  return CProfile(c) * f;
}

InvariantForm overflowed() {
  InvariantForm z(7);
  z.mark_overflow();
  return z;
}

}  // namespace

InvariantForm wedge(const InvariantForm& a, const InvariantForm& b, bool strict) {
  const int deg = a.degree() + b.degree();
  if (deg > 7) {
    if (strict) throw DegreeOverflow("wedge product of degree " + std::to_string(deg));
    return overflowed();
  }
  InvariantForm out(deg, a.real() && b.real());
  for (Basis x : kAllBasis) {
    if (a[x].is_zero()) continue;
    for (Basis y : kAllBasis) {
      if (b[y].is_zero()) continue;
      const bool dx = has_dr(x), dy = has_dr(y);
      if (dx && dy) continue;
      const auto p = n_product(n_part(x), n_part(y));
      if (!p) continue;
      // alpha ^ (dr ^ beta) = (-1)^|alpha| dr ^ alpha ^ beta.
      const double sign = (dy && degree_of(x) % 2 == 1) ? -1.0 : 1.0;
      const Basis target = (dx || dy) ? with_dr(p->b) : p->b;
      out.add(target, scaled(sign * p->c, a[x] * b[y]));
    }
  }
  return out;
}

InvariantForm d(const InvariantForm& a, StructureKind s) {
  if (a.degree() == 7) return overflowed();
  InvariantForm out(a.degree() + 1, a.real());
  for (Basis b : kAllBasis) {
    const auto& f = a[b];
    if (f.is_zero()) continue;
    if (!has_dr(b)) {
      out.add(with_dr(b), derivative(f));
      for (const auto& t : n_derivative(b, s)) out.add(t.b, scaled(t.c, f));
    } else {
      for (const auto& t : n_derivative(n_part(b), s)) out.add(with_dr(t.b), scaled(-t.c, f));
    }
  }
  return out;
}

InvariantForm star7(const InvariantForm& a, const G2Profile& g) {
  InvariantForm out(7 - a.degree(), a.real());
  for (Basis b : kAllBasis) {
    const auto& f = a[b];
    if (f.is_zero()) continue;
    const Basis n = n_part(b);
    const int k = degree_of(n);
    const auto t = n_star(n);
    const Profile warp = pow(g.h, 6 - 2 * k);
    if (!has_dr(b)) {
      const double sign = k % 2 == 0 ? 1.0 : -1.0;
      out.add(with_dr(t.b), scaled(sign * t.c, CProfile(warp * g.G) * f));
    } else {
      out.add(t.b, scaled(t.c, CProfile(warp / g.G) * f));
    }
  }
  return out;
}

InvariantForm interior_r(const InvariantForm& a, const Profile& s) {
  if (a.degree() == 0) throw DegreeMismatch("interior product of a 0-form");
  InvariantForm out(a.degree() - 1, a.real());
  for (Basis b : kAllBasis)
    if (has_dr(b) && !a[b].is_zero()) out.add(n_part(b), CProfile(s) * a[b]);
  return out;
}

InvariantForm build_phi(const G2Profile& g) {
  const auto F3 = g.F3();
  InvariantForm phi(3, true);
  phi.set(Basis::Omega, F3 / Profile(2.0));
  phi.set(Basis::Omegabar, conj(F3) / Profile(2.0));
  phi.set(Basis::dr_omega, CProfile(-(g.G * g.h * g.h)));
  return phi;
}

InvariantForm build_psi(const G2Profile& g) {
  const auto c = times_i(CProfile(g.G) * g.F3()) / Profile(2.0);
  InvariantForm psi(4, true);
  psi.set(Basis::dr_Omega, c);
  psi.set(Basis::dr_Omegabar, conj(c));
  psi.set(Basis::omega2_half, CProfile(-pow(g.h, 4)));
  return psi;
}

InvariantForm codifferential(const InvariantForm& a, const G2Profile& g) {
  if (a.degree() == 0) throw DegreeMismatch("codifferential of a 0-form");
  const auto s = d(star7(a, g), g.structure);
  const auto out = star7(s, g);
  return a.degree() % 2 == 0 ? out : -out;
}

InvariantForm hodge_laplacian(const InvariantForm& a, const G2Profile& g) {
  if (a.degree() == 0) return codifferential(d(a, g.structure), g);
  if (a.degree() == 7) return d(codifferential(a, g), g.structure);
  return d(codifferential(a, g), g.structure) + codifferential(d(a, g.structure), g);
}

double coclosed_defect(const G2Profile& g) {
  const Profile dh = derivative(g.h);
  const Profile c = g.structure == StructureKind::CY ? dh : dh - g.G * cos(3.0 * g.theta);
  double m = 0.0;
  for (double r : g.check_points()) m = std::max(m, std::abs(c.value_at(r)));
  return m;
}

InvariantForm hodge_laplacian_psi(const G2Profile& g, double tol) {
  const double defect = coclosed_defect(g);
  if (defect > tol)
    throw ConstraintViolated("coclosed constraint residual " + std::to_string(defect) + " exceeds " +
                             std::to_string(tol));
  return -d(star7(d(build_phi(g), g.structure), g), g.structure);
}

InvariantForm hodge_laplacian_psi_closed(const G2Profile& g) {
  const auto dF3 = derivative(g.F3());
  InvariantForm out(4, true);
  if (g.structure == StructureKind::CY) {
    const auto c = derivative(times_i(dF3) / (2.0 * g.G));
    out.set(Basis::dr_Omega, c);
    out.set(Basis::dr_Omegabar, conj(c));
    return out;
  }
  const Profile h2 = g.h * g.h;
  const auto inner = times_i(dF3) / (2.0 * g.G) - times_i(CProfile(1.5 * h2));
  const auto A = derivative(inner) + CProfile(6.0 * g.G * g.h * sin(3.0 * g.theta));
  const Profile B = -4.0 / g.G * derivative(pow(g.h, 3) * cos(3.0 * g.theta)) + 12.0 * h2;
  out.set(Basis::dr_Omega, A);
  out.set(Basis::dr_Omegabar, conj(A));
  out.set(Basis::omega2_half, CProfile(B));
  return out;
}

InvariantForm dphi_closed(const G2Profile& g) {
  const auto F3 = g.F3();
  const auto half_dF3 = derivative(F3) / Profile(2.0);
  InvariantForm out(4, true);
  if (g.structure == StructureKind::CY) {
    out.set(Basis::dr_Omega, half_dF3);
    out.set(Basis::dr_Omegabar, conj(half_dF3));
    return out;
  }
  const auto c = half_dF3 - CProfile(1.5 * g.G * g.h * g.h);
  out.set(Basis::dr_Omega, c);
  out.set(Basis::dr_Omegabar, conj(c));
  // 2i (F^3 - conj F^3) = -4 Im F^3.
  out.set(Basis::omega2_half, CProfile(-4.0 * F3.im));
  return out;
}

InvariantForm dpsi_closed(const G2Profile& g) {
  InvariantForm out(5, true);
  const Profile dh4 = derivative(pow(g.h, 4));
  if (g.structure == StructureKind::CY) {
    out.set(Basis::dr_omega2_half, CProfile(-dh4));
  } else {
    out.set(Basis::dr_omega2_half, CProfile(4.0 * g.G * g.F3().re - dh4));
  }
  return out;
}

Profile pointwise_inner(const InvariantForm& a, const InvariantForm& b, const G2Profile& g) {
  if (a.degree() != b.degree())
    throw DegreeMismatch("inner product of a " + std::to_string(a.degree()) + "-form and a " +
                         std::to_string(b.degree()) + "-form");
  const auto top = wedge(a, star7(conj(b), g));
  return top[Basis::dr_vol6].re / (g.G * pow(g.h, 6));
}

namespace {

// Integral over the domain in dr, by the rule matching how p is represented.
double integrate_dr(const Profile& p, const Domain& dom) {
  if (!dom.bounded()) throw DomainError("volume integrals need a bounded domain");
  if (auto m = p.mesh()) {
    if (m->periodic()) {
      // Periodic trapezoid rule: spectrally accurate for smooth data.
      double s = 0.0;
      for (int i = 0; i < m->n; ++i) s += p.value_at(m->node(i));
      return s * m->spacing();
    }
    return antiderivative(p, dom.lower(), 0.0).value_at(dom.upper());
  }
  auto fn = [&p](double r) { return ProfileEvaluator(r).value(p); };
  return integrate_open(fn, dom.lower(), dom.upper()).value;
}

}  // namespace

double integrate_volume(const Profile& f, const G2Profile& g) {
  return integrate_dr(f * g.G * pow(g.h, 6), g.domain);
}

double l2_inner(const InvariantForm& a, const InvariantForm& b, const G2Profile& g) {
  if (a.degree() != b.degree())
    throw DegreeMismatch("inner product of a " + std::to_string(a.degree()) + "-form and a " +
                         std::to_string(b.degree()) + "-form");
  // a ^ *conj(b) is already the density against dr ^ vol6.
  return integrate_dr(wedge(a, star7(conj(b), g))[Basis::dr_vol6].re, g.domain);
}

}  // namespace g2
