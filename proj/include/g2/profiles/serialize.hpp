#pragma once

#include <ostream>
#include <span>
#include <string>

#include "g2/profiles/profile.hpp"
#include "json.hpp"

namespace g2 {

nlohmann::json domain_to_json(const Domain& d);
Domain domain_from_json(const nlohmann::json& j);

/// Expression-tree schema: {"domain": ..., "expr": node}, where each node is
/// {"type": <kind>, "children": [...]} plus "value" (constant), "exponent"
/// (pow), {"r0","c0","tol","rule"} (antiderivative) or {"mesh","values",
/// "accuracy"} (sampled).
nlohmann::json profile_to_json(const Profile& p);
Profile profile_from_json(const nlohmann::json& j);

/// Rows r, value, d1, d2, d3, d4 at the given points, 17 significant digits.
void write_profile_csv(std::ostream& os, const Profile& p, std::span<const double> points);

/// Fixed 17-significant-digit rendering shared by every CSV writer.
std::string format_double(double v);

}  // namespace g2
