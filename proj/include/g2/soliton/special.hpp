#pragma once

#include <optional>

#include "g2/soliton/candidate.hpp"

namespace g2 {

/// theta = (2/3) atan(c e^{br}), k' = b (1 - c^2 e^{2br}) / (1 + c^2 e^{2br}),
/// h = G = 1, lambda = 0.
SolitonCandidate cy_closed_form(double b, double c, Domain domain = Domain::line());

struct SpecialParams {
  double b = 0.0;
  double c = 0.0;       ///< Cylinder: the constant k'
  double lambda = 0.0;  ///< Cone and AntiCone only; fixed for the other families
  std::optional<Domain> domain;
};

/// Explicit NK solitons:
///   Cone      3theta = 0,    h = r + b,  k' = -(lambda/4)(r + b)
///   AntiCone  3theta = pi,   h = b - r,  k' = (lambda/4)(b - r)
///   Cylinder  3theta = pi/2, h = b,      k' = c, lambda = -12/b^2
///   SineCone  3theta = r,    h = sin r,  k' = 0, lambda = -16
/// Default domains: (1 - b, 3 - b), (b - 3, b - 1), the circle of length 2 pi,
/// and (0, pi). Throws InvalidParams when h is not positive on the domain.
SolitonCandidate nk_special(Family family, const SpecialParams& p = {});

}  // namespace g2
