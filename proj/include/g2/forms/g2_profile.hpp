#pragma once

#include <random>
#include <vector>

#include "g2/forms/invariant_form.hpp"

namespace g2 {

/// Warped-product data (h, theta, G) with metric G^2 dr^2 + h^2 g_6 and
/// F = h e^{i theta}.
struct G2Profile {
  Profile h;
  Profile theta;
  Profile G;
  StructureKind structure = StructureKind::CY;
  Domain domain;

  /// Moves the three profiles onto `domain` and checks h > 0, G > 0 at the
  /// check points. Throws DomainError otherwise.
  static G2Profile make(Profile h, Profile theta, Profile G, StructureKind s, Domain domain = Domain::line());

  CProfile F() const { return CProfile(h) * cis(theta); }
  /// F^3 = h^3 e^{3 i theta}.
  CProfile F3() const { return CProfile(pow(h, 3)) * cis(3.0 * theta); }

  /// Points for pointwise precondition checks: mesh nodes when any profile is
  /// sampled, interior samples on bounded domains, a fixed grid on the line.
  std::vector<double> check_points(int n = 64) const;
};

/// Seeded random profile with no constraint imposed.
G2Profile random_g2_profile(std::mt19937_64& rng, StructureKind s, Domain domain = Domain::line());

/// Seeded random profile satisfying the coclosed constraint on
/// [-1, 1]: constant h for CY, h = h0 + antiderivative of G cos 3 theta for NK.
G2Profile random_coclosed_profile(std::mt19937_64& rng, StructureKind s);

/// Shared helper for pointwise checks of an arbitrary domain.
std::vector<double> check_points(const Domain& d, const std::optional<Mesh>& mesh, int n);

}  // namespace g2
