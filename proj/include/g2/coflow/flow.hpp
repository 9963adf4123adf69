#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "g2/forms/invariant_form.hpp"
#include "g2/profiles/finite_difference.hpp"
#include "g2/profiles/profile.hpp"

namespace g2 {

/// Nodal values of (h, theta, G) at time t. Immutable by convention: step()
/// returns a new state.
struct FlowState {
  Mesh mesh;
  std::vector<double> h;
  std::vector<double> theta;
  std::vector<double> G;
  double t = 0.0;
  StructureKind structure = StructureKind::CY;

  static FlowState from_profiles(const Mesh& mesh, const Profile& h, const Profile& theta, const Profile& G,
                                 StructureKind s, double t = 0.0);

  double min_h() const;
  double min_G() const;
};

/// Values and first two r-derivatives of the three fields at one node.
struct LocalJets {
  double h, dh, d2h;
  double theta, dtheta, d2theta;
  double G, dG;
};

struct PointRates {
  double h = 0.0;
  double theta = 0.0;
  double G = 0.0;
};

/// CY: theta_t = theta''/G^2 - G'theta'/G^3, G_t = -9 theta'^2/G, h_t = 0.
PointRates rates_cy(const LocalJets& j);

/// NK: h_t = h''/G^2 + 3h'^2/(hG^2) - h'G'/G^3 - 3/h,
///     G_t = -3G sin^2 3theta/h^2 - 9theta'^2/G,
///     theta_t = theta''/G^2 + 6theta' cos 3theta/(hG) - theta'G'/G^3 - 2 sin 3theta cos 3theta/h^2.
PointRates rates_nk(const LocalJets& j);

struct Rates {
  std::vector<double> h;
  std::vector<double> theta;
  std::vector<double> G;
};

struct FlowOptions {
  int stencil_order = 4;
  double cfl = 0.2;
  double max_dt = INFINITY;         ///< optional cap below the stable step
  double floor = 1e-6;             ///< SingularityDetected below this h or G
  double constraint_limit = 1e-2;  ///< ConstraintBlowup above this sup|c|
  double init_tolerance = 1e-5;    ///< admissible initial sup|c| for NK data
};

/// f''/G^2 + 6h'f'/(hG^2) - f'G'/G^3 with finite-difference derivatives.
std::vector<double> scalar_laplacian(const std::vector<double>& f, const FlowState& s, int stencil_order = 4);

/// Right-hand sides at every node. Interval end nodes are frozen (Dirichlet).
/// rhs_cy requires a CY state with spatially constant h; rhs_nk requires NK
/// and h > 0.
Rates rhs_cy(const FlowState& s, int stencil_order = 4);
Rates rhs_nk(const FlowState& s, int stencil_order = 4);
Rates rhs(const FlowState& s, int stencil_order = 4);

/// c = h' - G cos 3theta (NK) or h' (CY) at every node.
std::vector<double> constraint_residual(const FlowState& s, int stencil_order = 4);
/// tau0 from its closed form with finite-difference theta'.
std::vector<double> tau0_field(const FlowState& s, int stencil_order = 4);

/// Explicit stability bound cfl * min(G^2) * dr^2.
double stable_dt(const FlowState& s, double cfl);

/// One classical RK4 step.
FlowState step(const FlowState& s, double dt, int stencil_order = 4);

enum class FlowStatus { Completed, SingularityDetected, ConstraintBlowup };
std::string_view status_name(FlowStatus s);

struct StepRecord {
  double t;
  double dt;
  double constraint_sup;
  double tau0_sup;
  double min_h;
  double min_G;
};

struct FlowRun {
  std::vector<FlowState> snapshots;
  std::vector<StepRecord> diagnostics;
  FlowStatus status = FlowStatus::Completed;
  std::string message;
};

/// Integrates to t_end with the largest stable step that does not overshoot
/// the next output time. Output times must be strictly increasing in
/// [t0, t_end]; t_end is always the last snapshot.
FlowRun run_flow(const FlowState& initial, double t_end, std::vector<double> output_times,
                 const FlowOptions& opts = {});

}  // namespace g2
