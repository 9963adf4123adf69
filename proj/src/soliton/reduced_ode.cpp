#include "g2/soliton/reduced_ode.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "g2/error.hpp"
#include "g2/profiles/finite_difference.hpp"
#include "g2/profiles/taylor.hpp"

namespace g2 {

namespace {

using Vec = std::array<double, 3>;

Vec to_vec(const ReducedState& y) { return {y.h, y.dh, y.d2h}; }
ReducedState to_state(const Vec& v) { return {v[0], v[1], v[2]}; }

// Shared by plain doubles and Taylor series; `one` is the unit of V.
template <class V>
V leading_t(const V& h, const V& h1, const V& one) {
  return h * h * h * h1 * (h1 * h1 - one);
}

// Everything in the polynomial except the h''' term.
template <class V>
V remainder_t(const V& h, const V& h1, const V& h2, double lambda, const V& one) {
  const V hh = h * h, h3 = hh * h, h4 = hh * hh;
  const V p2 = h1 * h1, p4 = p2 * p2, p6 = p4 * p2;
  return -2.0 * (h3 * p2 * h2 * h2) + 3.0 * (hh * p4 * h2) - 6.0 * (h * p2) + h3 * h2 * h2 - 3.0 * (hh * h2) +
         12.0 * (h * p4) - 6.0 * (h * p6) + (0.25 * lambda) * (h4 * (p2 - one) * h2);
}

double leading(const ReducedState& y) { return leading_t(y.h, y.dh, 1.0); }
double remainder(const ReducedState& y, double lambda) { return remainder_t(y.h, y.dh, y.d2h, lambda, 1.0); }

using Series = Taylor<double>;

// Taylor expansion of the solution through (h, h', h'') to `order`, obtained
// by feeding the series back through the equation once per new coefficient.
Series solution_series(const ReducedState& y, double lambda, int order) {
  Series H = Series::constant(y.h, order);
  H.c[1] = y.dh;
  H.c[2] = 0.5 * y.d2h;
  for (int k = 3; k <= order; ++k) {
    const Series H1 = differentiate(H), H2 = differentiate(H1);
    const Series one = Series::constant(1.0, H2.order);
    const Series h3 = -1.0 * (remainder_t(H, H1, H2, lambda, one) / leading_t(H, H1, one));
    H.c[k] = h3.c[k - 3] / (k * (k - 1) * (k - 2));
  }
  return H;
}

std::array<double, 5> first_five(const Series& s) {
  if (s.order < 4) throw DomainError("series too short for a jet");
  return {s.c[0], s.c[1], s.c[2], s.c[3], s.c[4]};
}

Vec field(const Vec& v, double lambda) { return {v[1], v[2], reduced_rhs(to_state(v), lambda)}; }

// Dormand-Prince 5(4). The field is autonomous, so the nodes c_i are unused.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784, a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                 d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                 d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;

bool near_locus(const ReducedState& y, const ReducedOptions& o) {
  const double a = std::abs(y.dh);
  return a < o.locus_margin || a > 1.0 - o.locus_margin;
}

}  // namespace

double reduced_polynomial(const ReducedState& y, double d3h, double lambda) {
  return leading(y) * d3h + remainder(y, lambda);
}

double reduced_rhs(const ReducedState& y, double lambda) {
  if (!(y.h > 0.0)) throw SingularLocus("h must be positive");
  if (!(std::abs(y.dh) < 1.0)) throw SingularLocus("|h'| >= 1 leaves no real sin 3theta");
  const double lead = leading(y);
  if (!(std::abs(lead) >= kLeadingFloor)) throw SingularLocus("degenerate leading coefficient h^3 h'(h'^2 - 1)");
  return -remainder(y, lambda) / lead;
}

std::string_view status_name(ReducedStatus s) {
  switch (s) {
    case ReducedStatus::Completed: return "Completed";
    case ReducedStatus::SingularLocus: return "SingularLocus";
    case ReducedStatus::HFloor: return "HFloor";
  }
  return "?";
}

std::size_t Trajectory::segment(double r) const {
  const bool forward = r_.back() >= r_.front();
  const double lo = std::min(r_.front(), r_.back()), hi = std::max(r_.front(), r_.back());
  const double slack = 1e-12 * std::max(1.0, std::abs(hi));
  if (r < lo - slack || r > hi + slack) throw DomainError("r outside the integrated span");
  std::size_t i;
  if (forward)
    i = static_cast<std::size_t>(std::upper_bound(r_.begin(), r_.end(), r) - r_.begin());
  else
    i = static_cast<std::size_t>(std::upper_bound(r_.begin(), r_.end(), r, std::greater<>()) - r_.begin());
  return std::clamp<std::size_t>(i, 1, r_.size() - 1) - 1;
}

ReducedState Trajectory::at(double r) const {
  if (r_.size() == 1) return y0_;
  const std::size_t i = segment(r);
  const double s = (r - r_[i]) / (r_[i + 1] - r_[i]), s1 = 1.0 - s;
  const auto& rc = rcont_[i];
  Vec v;
  for (int c = 0; c < 3; ++c) v[c] = rc[0][c] + s * (rc[1][c] + s1 * (rc[2][c] + s * (rc[3][c] + s1 * rc[4][c])));
  return to_state(v);
}

ReducedState Trajectory::derivative_at(double r) const {
  if (r_.size() == 1) throw DomainError("trajectory has no steps");
  const std::size_t i = segment(r);
  const double h = r_[i + 1] - r_[i];
  const double s = (r - r_[i]) / h;
  const auto& rc = rcont_[i];
  Vec v;
  for (int c = 0; c < 3; ++c) {
    // d/ds of rc0 + s(rc1 + (1-s)(rc2 + s(rc3 + (1-s) rc4))).
    const double q = rc[3][c] + (1.0 - s) * rc[4][c];
    const double dq = -rc[4][c];
    const double p = rc[2][c] + s * q;
    const double dp = q + s * dq;
    const double m = rc[1][c] + (1.0 - s) * p;
    const double dm = -p + (1.0 - s) * dp;
    v[c] = (m + s * dm) / h;
  }
  return to_state(v);
}

Trajectory integrate_reduced(const ReducedState& y0, double lambda, double r0, double r1,
                             const ReducedOptions& opts) {
  if (near_locus(y0, opts) || y0.h < opts.h_floor)
    throw SingularLocus("initial point is not admissible (need h > 0 and 0 < |h'| < 1 away from the locus)");
  reduced_rhs(y0, lambda);

  Trajectory t;
  t.lambda_ = lambda;
  t.y0_ = y0;
  t.r_.push_back(r0);
  if (r1 == r0) return t;

  const double dir = r1 > r0 ? 1.0 : -1.0;
  const double span = std::abs(r1 - r0);
  double step = std::min(span, 1e-2 * span + 1e-3);
  Vec y = to_vec(y0);
  Vec k1 = field(y, lambda);
  double r = r0;
  long count = 0;

  auto axpy = [](const Vec& base, double h, std::initializer_list<std::pair<double, const Vec*>> terms) {
    Vec out = base;
    for (const auto& [a, k] : terms)
      for (int c = 0; c < 3; ++c) out[c] += h * a * (*k)[c];
    return out;
  };

  while (dir * (r1 - r) > 0.0) {
    if (++count > opts.max_steps) throw StepFailure("exceeded the step budget");
    bool last = false;
    if (step >= std::abs(r1 - r)) {
      step = std::abs(r1 - r);
      last = true;
    }
    if (step < 1e-14 * std::max(1.0, std::abs(r))) throw StepFailure("step size underflow at r = " + std::to_string(r));
    const double h = dir * step;

    Vec k2, k3, k4, k5, k6, k7, ynew;
    double err = INFINITY;
    try {
      k2 = field(axpy(y, h, {{a21, &k1}}), lambda);
      k3 = field(axpy(y, h, {{a31, &k1}, {a32, &k2}}), lambda);
      k4 = field(axpy(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}), lambda);
      k5 = field(axpy(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}), lambda);
      k6 = field(axpy(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}), lambda);
      ynew = axpy(y, h, {{a71, &k1}, {a73, &k3}, {a74, &k4}, {a75, &k5}, {a76, &k6}});
      k7 = field(ynew, lambda);
      double acc = 0.0;
      for (int c = 0; c < 3; ++c) {
        const double e = h * (e1 * k1[c] + e3 * k3[c] + e4 * k4[c] + e5 * k5[c] + e6 * k6[c] + e7 * k7[c]);
        const double sc = opts.atol + opts.rtol * std::max(std::abs(y[c]), std::abs(ynew[c]));
        acc += (e / sc) * (e / sc);
      }
      err = std::sqrt(acc / 3.0);
    } catch (const SingularLocus&) {
      err = INFINITY;  // a stage left the admissible region: shrink and retry
    }

    if (!(err <= 1.0)) {
      const double fac = std::isfinite(err) ? std::max(0.2, 0.9 * std::pow(err, -0.2)) : 0.25;
      step *= fac;
      continue;
    }

    std::array<Vec, 5> rc;
    for (int c = 0; c < 3; ++c) {
      const double ydiff = ynew[c] - y[c];
      const double bspl = h * k1[c] - ydiff;
      rc[0][c] = y[c];
      rc[1][c] = ydiff;
      rc[2][c] = bspl;
      rc[3][c] = ydiff - h * k7[c] - bspl;
      rc[4][c] = h * (d1 * k1[c] + d3 * k3[c] + d4 * k4[c] + d5 * k5[c] + d6 * k6[c] + d7 * k7[c]);
    }
    t.rcont_.push_back(rc);
    r = last ? r1 : r + h;
    t.r_.push_back(r);
    y = ynew;
    k1 = k7;

    const auto s = to_state(y);
    if (s.h < opts.h_floor) {
      t.status_ = ReducedStatus::HFloor;
      break;
    }
    if (near_locus(s, opts)) {
      t.status_ = ReducedStatus::SingularLocus;
      break;
    }
    step *= std::min(5.0, 0.9 * std::pow(std::max(err, 1e-10), -0.2));
  }
  return t;
}

Recovered recover_theta_k(const Trajectory& t, int u_sign, int nodes) {
  if (u_sign != 1 && u_sign != -1) throw InvalidParams("u_sign must be +1 or -1");
  if (t.steps() == 0) throw DomainError("empty trajectory");
  if (nodes < 9) throw InvalidParams("need at least 9 recovery nodes");
  const double a = std::min(t.r_begin(), t.r_end()), b = std::max(t.r_begin(), t.r_end());
  const Mesh mesh = Mesh::uniform(Domain::interval(a, b), nodes);
  const double lam = t.lambda();

  std::vector<double> h1(nodes), h2(nodes), u(nodes);
  std::vector<std::array<double, 5>> jh(nodes), jt(nodes), jk(nodes);
  double prev = 0.0;
  for (int i = 0; i < nodes; ++i) {
    const auto y = t.at(mesh.node(i));
    h1[i] = y.dh;
    h2[i] = y.d2h;
    const double u2 = 1.0 - y.dh * y.dh;
    if (!(u2 > 1e-12)) throw SignAmbiguity("sin 3theta vanishes at r = " + std::to_string(mesh.node(i)));
    u[i] = u_sign * std::sqrt(u2);
    double phase = std::atan2(u[i], y.dh);
    if (i > 0) {
      const double two_pi = 2.0 * std::numbers::pi;
      phase += two_pi * std::round((prev - phase) / two_pi);
    }
    prev = phase;

    // Nodal jets come from the equation itself; differencing the dense
    // output would amplify its step-to-step kinks. h needs order 6 so that
    // k' keeps four derivatives.
    const Series H = solution_series(y, lam, 6);
    const Series H1 = differentiate(H), H2 = differentiate(H1);
    const Series U = static_cast<double>(u_sign) * pow(Series::constant(1.0, H1.order) - H1 * H1, 0.5);
    Series T3 = atan(U / H1);
    T3.c[0] = phase;  // atan2 branch, unwrapped along the mesh
    const Series H_2 = H * H;
    const Series K = (3.0 * (H_2 * H1) + H_2 * H * H2 / H1 - 3.0 * (H_2 / H1) - (lam / 4.0) * (H_2 * H_2 / H1)) /
                     (H_2 * H);
    jh[i] = first_five(H);
    jt[i] = first_five((1.0 / 3.0) * T3);
    jk[i] = first_five(K);
  }

  const FiniteDifference fd(mesh, 4);
  const auto du = fd.derivative(u, 1);
  double check = 0.0;
  for (int i = 0; i < nodes; ++i) check = std::max(check, std::abs(u[i] * du[i] + h1[i] * h2[i]));

  Recovered out;
  auto& c = out.candidate;
  c.h = Profile::sampled_jets(mesh, std::move(jh));
  c.theta = Profile::sampled_jets(mesh, std::move(jt));
  c.kprime = Profile::sampled_jets(mesh, std::move(jk));
  c.lambda = lam;
  c.structure = StructureKind::NK;
  c.family = Family::OdeTrajectory;
  c.domain = mesh.domain;
  out.sign_check = check;
  return out;
}

}  // namespace g2
