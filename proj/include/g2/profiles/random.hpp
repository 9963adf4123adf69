#pragma once

#include <random>

#include "g2/profiles/profile.hpp"

namespace g2 {

/// Seeded closed-form test functions. Positive profiles stay within
/// [0.5, 2.5] for every r; angle profiles are bounded smooth functions.
Profile random_positive_profile(std::mt19937_64& rng, const Domain& d = Domain::line());
Profile random_angle_profile(std::mt19937_64& rng, const Domain& d = Domain::line());

}  // namespace g2
