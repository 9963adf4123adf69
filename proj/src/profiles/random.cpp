#include "g2/profiles/random.hpp"

namespace g2 {

namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace

Profile random_positive_profile(std::mt19937_64& rng, const Domain& d) {
  const auto r = Profile::coordinate(d);
  const double base = uniform(rng, 0.5, 1.5);
  const double amp = uniform(rng, 0.0, 0.5);
  const double freq = uniform(rng, 0.5, 2.0);
  const double phase = uniform(rng, 0.0, 6.0);
  const double bump = uniform(rng, 0.0, 0.5);
  const double centre = uniform(rng, -1.0, 1.0);
  const auto s = sin(freq * r + phase);
  return base + amp * s * s + bump * exp(-(r - centre) * (r - centre));
}

Profile random_angle_profile(std::mt19937_64& rng, const Domain& d) {
  const auto r = Profile::coordinate(d);
  const double c0 = uniform(rng, -1.0, 1.0);
  const double c1 = uniform(rng, -0.5, 0.5);
  const double freq = uniform(rng, 0.5, 2.0);
  const double phase = uniform(rng, 0.0, 6.0);
  const double c2 = uniform(rng, -0.3, 0.3);
  const double centre = uniform(rng, -1.0, 1.0);
  return c0 + c1 * sin(freq * r + phase) + c2 * atan(r - centre);
}

}  // namespace g2
