#pragma once

#include <array>
#include <string_view>
#include <vector>

#include "g2/soliton/candidate.hpp"

namespace g2 {

/// (h, h', h'') along the third-order reduction.
struct ReducedState {
  double h = 0.0;
  double dh = 0.0;
  double d2h = 0.0;
};

/// Left-hand side of the polynomial third-order equation for h:
///   h^3 h'(h'^2 - 1) h''' - 2h^3 h'^2 h''^2 + 3h^2 h'^4 h'' - 6h h'^2 + h^3 h''^2
///   - 3h^2 h'' + 12h h'^4 - 6h h'^6 + (lambda/4) h^4 (h'^2 - 1) h''.
double reduced_polynomial(const ReducedState& y, double d3h, double lambda);

/// The leading coefficient h^3 h'(h'^2 - 1) may not fall below this.
inline constexpr double kLeadingFloor = 1e-10;

/// h''' solving the polynomial equation. Throws SingularLocus when h <= 0,
/// |h'| >= 1 or the leading coefficient is degenerate.
double reduced_rhs(const ReducedState& y, double lambda);

struct ReducedOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  double locus_margin = 1e-4;  ///< stop when |h'| is this close to 0 or 1
  double h_floor = 1e-6;       ///< stop when h drops below
  long max_steps = 200000;
};

enum class ReducedStatus { Completed, SingularLocus, HFloor };
std::string_view status_name(ReducedStatus s);

/// Accepted DOPRI5 steps with Hairer's continuous extension.
class Trajectory {
 public:
  double lambda() const { return lambda_; }
  ReducedStatus status() const { return status_; }
  double r_begin() const { return r_.front(); }
  double r_end() const { return r_.back(); }
  std::size_t steps() const { return r_.size() - 1; }
  const std::vector<double>& nodes() const { return r_; }

  /// Dense output anywhere in the integrated span.
  ReducedState at(double r) const;
  /// r-derivative of the dense output.
  ReducedState derivative_at(double r) const;

 private:
  friend Trajectory integrate_reduced(const ReducedState&, double, double, double, const ReducedOptions&);
  std::size_t segment(double r) const;

  double lambda_ = 0.0;
  ReducedState y0_;
  ReducedStatus status_ = ReducedStatus::Completed;
  std::vector<double> r_;
  // rcont_[i][j][c]: j-th continuous coefficient of component c on step i.
  std::vector<std::array<std::array<double, 3>, 5>> rcont_;
};

/// Integrates from r0 towards r1 (either direction). The initial point must
/// be admissible (SingularLocus otherwise). Stops early with a status on
/// approach to the singular locus; throws StepFailure when the step size
/// underflows or max_steps is exceeded.
Trajectory integrate_reduced(const ReducedState& y0, double lambda, double r0, double r1,
                             const ReducedOptions& opts = {});

struct Recovered {
  SolitonCandidate candidate;
  /// sup |u u' + h' h''| with u' from finite differences of the recovered u.
  double sign_check = 0.0;
};

/// theta from h' = cos 3theta and u = sin 3theta = u_sign sqrt(1 - h'^2),
/// unwrapped continuously; k' = (3h^2 h' + h^3 h''/h' - 3h^2/h' - lambda h^4/(4h'))/h^3.
/// Throws SignAmbiguity if u reaches 0 inside the span.
Recovered recover_theta_k(const Trajectory& t, int u_sign, int nodes = 401);

}  // namespace g2
