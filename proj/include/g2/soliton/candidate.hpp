#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "g2/forms/g2_profile.hpp"

namespace g2 {

enum class Family { Cone, AntiCone, Cylinder, SineCone, CYClosedForm, OdeTrajectory, Custom };

std::string_view family_name(Family f);
/// Case-insensitive. Throws InvalidParams on an unknown name.
Family family_from_name(std::string_view name);

/// Gradient soliton data with G = 1 and X = k' d/dr.
struct SolitonCandidate {
  Profile h;
  Profile theta;
  Profile kprime;
  double lambda = 0.0;
  StructureKind structure = StructureKind::NK;
  Family family = Family::Custom;
  Domain domain;

  G2Profile g2() const;
  /// "expanding", "steady" or "shrinking" by the sign of lambda.
  std::string_view soliton_type() const;
  /// Sample points: mesh nodes for sampled data, interior points otherwise.
  std::vector<double> samples(int n = 200) const;
};

/// Named sup-norm residuals over a sample set.
struct ResidualReport {
  std::vector<std::pair<std::string, double>> entries;
  int samples = 0;
  double tolerance = 0.0;
  bool passed = false;

  double worst() const;
  /// Throws std::out_of_range for an unknown entry.
  double at(std::string_view name) const;
};

/// Non-finite or negative entries always fail.
ResidualReport make_report(std::vector<std::pair<std::string, double>> entries, int samples, double tolerance);

nlohmann::json report_to_json(const ResidualReport& r);

/// Columns r,h,theta,kprime.
void write_candidate_csv(std::ostream& os, const SolitonCandidate& c, const std::vector<double>& points);

}  // namespace g2
