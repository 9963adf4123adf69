#include "g2/coflow/flow.hpp"

#include <algorithm>
#include <cmath>

#include "g2/error.hpp"

namespace g2 {

namespace {

struct Derivs {
  std::vector<double> d1h, d2h, d1t, d2t, d1G;
};

Derivs derivatives(const FlowState& s, const FiniteDifference& fd, bool need_h2) {
  Derivs d;
  d.d1h = fd.derivative(s.h, 1);
  if (need_h2) d.d2h = fd.derivative(s.h, 2);
  d.d1t = fd.derivative(s.theta, 1);
  d.d2t = fd.derivative(s.theta, 2);
  d.d1G = fd.derivative(s.G, 1);
  return d;
}

LocalJets jets_at(const FlowState& s, const Derivs& d, int i) {
  return {s.h[i], d.d1h[i], d.d2h.empty() ? 0.0 : d.d2h[i], s.theta[i], d.d1t[i], d.d2t[i], s.G[i], d.d1G[i]};
}

void freeze_ends(const FlowState& s, Rates& r) {
  if (s.mesh.periodic()) return;
  for (auto* v : {&r.h, &r.theta, &r.G}) {
    v->front() = 0.0;
    v->back() = 0.0;
  }
}

void check_size(const FlowState& s) {
  const auto n = static_cast<std::size_t>(s.mesh.n);
  if (s.h.size() != n || s.theta.size() != n || s.G.size() != n)
    throw DomainError("flow state arrays do not match the mesh");
}

FlowState axpy(const FlowState& s, double a, const Rates& k) {
  FlowState out = s;
  for (int i = 0; i < s.mesh.n; ++i) {
    out.h[i] += a * k.h[i];
    out.theta[i] += a * k.theta[i];
    out.G[i] += a * k.G[i];
  }
  return out;
}

double sup_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

Rates rhs_cy_with(const FlowState& s, const FiniteDifference& fd) {
  if (s.structure != StructureKind::CY) throw StructureMismatch("rhs_cy called on a nearly Kahler state");
  check_size(s);
  const auto [lo, hi] = std::minmax_element(s.h.begin(), s.h.end());
  if (*hi - *lo > 1e-12 * std::max(1.0, std::abs(*hi)))
    throw StructureMismatch("the CY flow requires spatially constant h");
  const auto d = derivatives(s, fd, false);
  Rates r{std::vector<double>(s.mesh.n, 0.0), std::vector<double>(s.mesh.n), std::vector<double>(s.mesh.n)};
  for (int i = 0; i < s.mesh.n; ++i) {
    const auto p = rates_cy(jets_at(s, d, i));
    r.theta[i] = p.theta;
    r.G[i] = p.G;
  }
  freeze_ends(s, r);
  return r;
}

Rates rhs_nk_with(const FlowState& s, const FiniteDifference& fd) {
  if (s.structure != StructureKind::NK) throw StructureMismatch("rhs_nk called on a Calabi-Yau state");
  check_size(s);
  for (int i = 0; i < s.mesh.n; ++i)
    if (!(s.h[i] > 0.0)) throw SingularityDetected("h <= 0 at r = " + std::to_string(s.mesh.node(i)));
  const auto d = derivatives(s, fd, true);
  Rates r{std::vector<double>(s.mesh.n), std::vector<double>(s.mesh.n), std::vector<double>(s.mesh.n)};
  for (int i = 0; i < s.mesh.n; ++i) {
    const auto p = rates_nk(jets_at(s, d, i));
    r.h[i] = p.h;
    r.theta[i] = p.theta;
    r.G[i] = p.G;
  }
  freeze_ends(s, r);
  return r;
}

Rates rhs_with(const FlowState& s, const FiniteDifference& fd) {
  return s.structure == StructureKind::CY ? rhs_cy_with(s, fd) : rhs_nk_with(s, fd);
}

std::vector<double> constraint_with(const FlowState& s, const FiniteDifference& fd) {
  check_size(s);
  auto c = fd.derivative(s.h, 1);
  if (s.structure == StructureKind::NK)
    for (int i = 0; i < s.mesh.n; ++i) c[i] -= s.G[i] * std::cos(3.0 * s.theta[i]);
  return c;
}

std::vector<double> tau0_with(const FlowState& s, const FiniteDifference& fd) {
  check_size(s);
  const auto t1 = fd.derivative(s.theta, 1);
  std::vector<double> out(s.mesh.n);
  for (int i = 0; i < s.mesh.n; ++i) {
    out[i] = t1[i] / s.G[i];
    if (s.structure == StructureKind::NK) out[i] += 2.0 * std::sin(3.0 * s.theta[i]) / s.h[i];
    out[i] *= 12.0 / 7.0;
  }
  return out;
}

FlowState step_with(const FlowState& s, double dt, const FiniteDifference& fd) {
  const auto k1 = rhs_with(s, fd);
  const auto k2 = rhs_with(axpy(s, 0.5 * dt, k1), fd);
  const auto k3 = rhs_with(axpy(s, 0.5 * dt, k2), fd);
  const auto k4 = rhs_with(axpy(s, dt, k3), fd);
  FlowState out = s;
  for (int i = 0; i < s.mesh.n; ++i) {
    out.h[i] += dt / 6.0 * (k1.h[i] + 2.0 * k2.h[i] + 2.0 * k3.h[i] + k4.h[i]);
    out.theta[i] += dt / 6.0 * (k1.theta[i] + 2.0 * k2.theta[i] + 2.0 * k3.theta[i] + k4.theta[i]);
    out.G[i] += dt / 6.0 * (k1.G[i] + 2.0 * k2.G[i] + 2.0 * k3.G[i] + k4.G[i]);
  }
  out.t = s.t + dt;
  return out;
}

}  // namespace

FlowState FlowState::from_profiles(const Mesh& mesh, const Profile& h, const Profile& theta, const Profile& G,
                                   StructureKind s, double t) {
  FlowState st{mesh, std::vector<double>(mesh.n), std::vector<double>(mesh.n), std::vector<double>(mesh.n), t, s};
  for (int i = 0; i < mesh.n; ++i) {
    ProfileEvaluator ev(mesh.node(i));
    st.h[i] = ev.value(h);
    st.theta[i] = ev.value(theta);
    st.G[i] = ev.value(G);
  }
  return st;
}

double FlowState::min_h() const { return *std::min_element(h.begin(), h.end()); }
double FlowState::min_G() const { return *std::min_element(G.begin(), G.end()); }

PointRates rates_cy(const LocalJets& j) {
  const double G2 = j.G * j.G;
  return {0.0, j.d2theta / G2 - j.dG * j.dtheta / (G2 * j.G), -9.0 * j.dtheta * j.dtheta / j.G};
}

PointRates rates_nk(const LocalJets& j) {
  const double G2 = j.G * j.G, G3 = G2 * j.G;
  const double s3 = std::sin(3.0 * j.theta), c3 = std::cos(3.0 * j.theta);
  PointRates p;
  p.h = j.d2h / G2 + 3.0 * j.dh * j.dh / (j.h * G2) - j.dh * j.dG / G3 - 3.0 / j.h;
  p.G = -3.0 * j.G * s3 * s3 / (j.h * j.h) - 9.0 * j.dtheta * j.dtheta / j.G;
  p.theta = j.d2theta / G2 + 6.0 * j.dtheta * c3 / (j.h * j.G) - j.dtheta * j.dG / G3 -
            2.0 * s3 * c3 / (j.h * j.h);
  return p;
}

std::vector<double> scalar_laplacian(const std::vector<double>& f, const FlowState& s, int stencil_order) {
  check_size(s);
  const FiniteDifference fd(s.mesh, stencil_order);
  const auto f1 = fd.derivative(f, 1), f2 = fd.derivative(f, 2);
  const auto h1 = fd.derivative(s.h, 1), G1 = fd.derivative(s.G, 1);
  std::vector<double> out(s.mesh.n);
  for (int i = 0; i < s.mesh.n; ++i) {
    const double G = s.G[i], G2 = G * G;
    out[i] = f2[i] / G2 + 6.0 * h1[i] * f1[i] / (s.h[i] * G2) - f1[i] * G1[i] / (G2 * G);
  }
  return out;
}

Rates rhs_cy(const FlowState& s, int stencil_order) {
  return rhs_cy_with(s, FiniteDifference(s.mesh, stencil_order));
}

Rates rhs_nk(const FlowState& s, int stencil_order) {
  return rhs_nk_with(s, FiniteDifference(s.mesh, stencil_order));
}

Rates rhs(const FlowState& s, int stencil_order) {
  return rhs_with(s, FiniteDifference(s.mesh, stencil_order));
}

std::vector<double> constraint_residual(const FlowState& s, int stencil_order) {
  return constraint_with(s, FiniteDifference(s.mesh, stencil_order));
}

std::vector<double> tau0_field(const FlowState& s, int stencil_order) {
  return tau0_with(s, FiniteDifference(s.mesh, stencil_order));
}

double stable_dt(const FlowState& s, double cfl) {
  const double g = s.min_G();
  const double dr = s.mesh.spacing();
  return cfl * g * g * dr * dr;
}

FlowState step(const FlowState& s, double dt, int stencil_order) {
  return step_with(s, dt, FiniteDifference(s.mesh, stencil_order));
}

std::string_view status_name(FlowStatus s) {
  switch (s) {
    case FlowStatus::Completed: return "Completed";
    case FlowStatus::SingularityDetected: return "SingularityDetected";
    case FlowStatus::ConstraintBlowup: return "ConstraintBlowup";
  }
  return "?";
}

FlowRun run_flow(const FlowState& initial, double t_end, std::vector<double> output_times, const FlowOptions& opts) {
  check_size(initial);
  if (!(opts.cfl > 0.0)) throw DomainError("cfl must be positive");
  if (!(opts.max_dt > 0.0)) throw DomainError("max_dt must be positive");
  if (!(t_end >= initial.t)) throw DomainError("t_end precedes the initial time");
  for (std::size_t i = 0; i < output_times.size(); ++i) {
    const double ti = output_times[i];
    if (ti < initial.t || ti > t_end) throw DomainError("output time outside [t0, t_end]");
    if (i > 0 && !(ti > output_times[i - 1])) throw DomainError("output times must be strictly increasing");
  }
  if (output_times.empty() || output_times.back() < t_end) output_times.push_back(t_end);
  const FiniteDifference fd(initial.mesh, opts.stencil_order);
  if (initial.min_h() < opts.floor || initial.min_G() < opts.floor)
    throw SingularityDetected("initial data below the positivity floor");
  if (initial.structure == StructureKind::NK) {
    const double c0 = sup_abs(constraint_with(initial, fd));
    if (c0 > opts.init_tolerance)
      throw ConstraintViolated("initial constraint residual " + std::to_string(c0) + " exceeds " +
                               std::to_string(opts.init_tolerance));
  }

  FlowRun run;
  FlowState cur = initial;
  std::size_t next = 0;
  auto take_snapshots = [&]() {
    while (next < output_times.size() && std::abs(cur.t - output_times[next]) <= 1e-12 * std::max(1.0, t_end)) {
      run.snapshots.push_back(cur);
      ++next;
    }
  };
  take_snapshots();

  while (next < output_times.size()) {
    const double target = output_times[next];
    double dt = std::min(stable_dt(cur, opts.cfl), opts.max_dt);
    // Avoid a sliver step: split the remaining distance evenly.
    const double remaining = target - cur.t;
    const double pieces = std::ceil(remaining / dt - 1e-9);
    dt = remaining / std::max(1.0, pieces);

    FlowState nxt;
    try {
      nxt = step_with(cur, dt, fd);
    } catch (const SingularityDetected& e) {
      run.status = FlowStatus::SingularityDetected;
      run.message = e.what();
      run.snapshots.push_back(cur);
      break;
    }
    if (pieces <= 1.0) nxt.t = target;
    cur = std::move(nxt);

    bool finite = true;
    for (int i = 0; i < cur.mesh.n && finite; ++i)
      finite = std::isfinite(cur.h[i]) && std::isfinite(cur.theta[i]) && std::isfinite(cur.G[i]);
    const double min_h = cur.min_h(), min_G = cur.min_G();
    if (!finite || min_h < opts.floor || min_G < opts.floor) {
      run.diagnostics.push_back({cur.t, dt, NAN, NAN, min_h, min_G});
      run.status = FlowStatus::SingularityDetected;
      run.message = finite ? "h or G fell below the floor" : "non-finite values";
      run.snapshots.push_back(cur);
      break;
    }
    const double c = sup_abs(constraint_with(cur, fd));
    run.diagnostics.push_back({cur.t, dt, c, sup_abs(tau0_with(cur, fd)), min_h, min_G});
    if (c > opts.constraint_limit) {
      run.status = FlowStatus::ConstraintBlowup;
      run.message = "constraint residual " + std::to_string(c) + " exceeds the limit";
      run.snapshots.push_back(cur);
      break;
    }
    take_snapshots();
  }
  return run;
}

}  // namespace g2
