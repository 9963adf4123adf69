#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"

namespace g2::cli {

struct IdentityResult {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool passed() const { return max_residual < tolerance; }  // false for NaN
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  int profiles = 0;
  int points = 0;
  std::vector<IdentityResult> identities;

  bool passed() const;
  /// Stable key order and no timings, so equal inputs give equal bytes.
  nlohmann::json to_json() const;
};

/// Worker count for parameter sweeps: COFLOW_THREADS when set (a positive
/// integer, else ConfigError), otherwise the hardware concurrency.
int thread_cap();

/// Runs body(i) for i in [0, n) on up to `threads` workers. The first
/// exception thrown by any task is rethrown after all workers stop.
void parallel_for(int n, int threads, const std::function<void(int)>& body);

/// d^2 = 0, ** = id, d phi and d psi against their closed forms, tau2 = 0 and
/// closed-form against first-principles tau0, tau1, on seeded random
/// profiles (alternating CY, NK) at `points` points of [-2, 2].
SuiteReport identity_suite(std::uint64_t seed, int profiles, int points, int threads, double tolerance_scale = 1.0);

/// The closed-form Laplacian of psi against -d*d phi on seeded coclosed
/// profiles at `points` points of [-1, 1].
SuiteReport laplacian_suite(std::uint64_t seed, int profiles, int points, int threads, double tolerance_scale = 1.0);

/// Residuals of the explicit CY and NK soliton families.
SuiteReport soliton_suite(int samples, int threads, double tolerance_scale = 1.0);

/// Dispatches on identities | laplacian | solitons | all. "all" merges the
/// three with 10 coclosed profiles for the Laplacian part.
SuiteReport run_suite(const std::string& suite, std::uint64_t seed, int profiles, int points, int threads,
                      double tolerance_scale = 1.0);

}  // namespace g2::cli
