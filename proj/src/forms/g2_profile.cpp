#include "g2/forms/g2_profile.hpp"

#include <algorithm>

#include "g2/error.hpp"
#include "g2/profiles/random.hpp"

namespace g2 {

std::vector<double> check_points(const Domain& d, const std::optional<Mesh>& mesh, int n) {
  if (mesh) {
    const int stride = std::max(1, mesh->n / n);
    std::vector<double> pts;
    for (int i = 0; i < mesh->n; i += stride) pts.push_back(mesh->node(i));
    return pts;
  }
  if (d.bounded()) return d.sample_points(n);
  std::vector<double> pts(n);
  for (int i = 0; i < n; ++i) pts[i] = -2.0 + 4.0 * (i + 0.5) / n;
  return pts;
}

G2Profile G2Profile::make(Profile h, Profile theta, Profile G, StructureKind s, Domain domain) {
  G2Profile g{h.on(domain), theta.on(domain), G.on(domain), s, domain};
  for (double r : g.check_points()) {
    ProfileEvaluator ev(r);
    if (!(ev.value(g.h) > 0.0)) throw DomainError("h must be positive (fails at r = " + std::to_string(r) + ")");
    if (!(ev.value(g.G) > 0.0)) throw DomainError("G must be positive (fails at r = " + std::to_string(r) + ")");
  }
  return g;
}

std::vector<double> G2Profile::check_points(int n) const {
  auto mesh = h.mesh();
  if (!mesh) mesh = theta.mesh();
  if (!mesh) mesh = G.mesh();
  return g2::check_points(domain, mesh, n);
}

G2Profile random_g2_profile(std::mt19937_64& rng, StructureKind s, Domain domain) {
  auto h = random_positive_profile(rng, domain);
  auto theta = random_angle_profile(rng, domain);
  auto G = random_positive_profile(rng, domain);
  return G2Profile::make(h, theta, G, s, domain);
}

G2Profile random_coclosed_profile(std::mt19937_64& rng, StructureKind s) {
  const auto domain = Domain::interval(-1.0, 1.0);
  auto theta = random_angle_profile(rng, domain);
  auto G = random_positive_profile(rng, domain);
  const double h0 = std::uniform_real_distribution<double>(3.0, 4.0)(rng);
  // |G cos 3 theta| <= 2.5 keeps h above 0.5 on the unit half-width.
  auto h = s == StructureKind::CY ? Profile::constant(h0, domain)
                                  : antiderivative(G * cos(3.0 * theta), 0.0, h0);
  return G2Profile::make(h, theta, G, s, domain);
}

}  // namespace g2
