#pragma once

#include <optional>
#include <string>

#include "g2/soliton/reduced_ode.hpp"
#include "g2/soliton/residuals.hpp"

namespace g2 {

/// Closing functional F(lambda) = q(r1) - target, where q is one component of
/// the reduced state reached from fixed initial jets at r0.
struct ShootConfig {
  ReducedState start;
  double r0 = 0.0;
  double r1 = 1.0;
  enum class Quantity { h, dh, d2h } quantity = Quantity::dh;
  double target = 0.0;
  double lambda_lo = -1.0;
  double lambda_hi = 1.0;
  double lambda_tol = 1e-10;
  int max_iterations = 200;
  int u_sign = 1;
  double residual_tol = 1e-6;
  ReducedOptions ode;
};

enum class ShootStatus { Found, NotFound, NotConverged };
std::string_view status_name(ShootStatus s);

struct ShootResult {
  ShootStatus status = ShootStatus::NotFound;
  double lambda = NAN;
  double closing = NAN;  ///< F at the returned lambda
  int iterations = 0;
  double bracket_lo = NAN, bracket_hi = NAN;
  double f_lo = NAN, f_hi = NAN;
  std::optional<SolitonCandidate> candidate;
  std::optional<ResidualReport> report;
  std::string message;
};

/// F(lambda); throws NoBracket when the trajectory stops before r1.
double closing_functional(const ShootConfig& cfg, double lambda);

/// Bisection down to a small bracket, then safeguarded secant. A bracket
/// without a sign change yields NotFound with the endpoint values; an
/// endpoint whose trajectory cannot reach r1 throws NoBracket. Found requires
/// residuals_nk of the recovered candidate below residual_tol.
ShootResult shoot(const ShootConfig& cfg);

}  // namespace g2
