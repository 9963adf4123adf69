#include "g2/soliton/candidate.hpp"

#include <cctype>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "g2/error.hpp"
#include "g2/profiles/serialize.hpp"

namespace g2 {

namespace {

constexpr std::pair<Family, std::string_view> kFamilies[] = {
    {Family::Cone, "Cone"},
    {Family::AntiCone, "AntiCone"},
    {Family::Cylinder, "Cylinder"},
    {Family::SineCone, "SineCone"},
    {Family::CYClosedForm, "CYClosedForm"},
    {Family::OdeTrajectory, "OdeTrajectory"},
    {Family::Custom, "Custom"},
};

}  // namespace

std::string_view family_name(Family f) {
  for (const auto& [k, name] : kFamilies)
    if (k == f) return name;
  return "?";
}

Family family_from_name(std::string_view name) {
  auto lower = [](std::string_view s) {
    std::string out(s);
    for (char& ch : out) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    return out;
  };
  for (const auto& [k, n] : kFamilies)
    if (lower(n) == lower(name)) return k;
  throw InvalidParams("unknown soliton family '" + std::string(name) + "'");
}

G2Profile SolitonCandidate::g2() const { return G2Profile::make(h, theta, 1.0, structure, domain); }

std::string_view SolitonCandidate::soliton_type() const {
  if (lambda > 0.0) return "expanding";
  if (lambda < 0.0) return "shrinking";
  return "steady";
}

std::vector<double> SolitonCandidate::samples(int n) const {
  auto mesh = h.mesh();
  if (!mesh) mesh = theta.mesh();
  if (!mesh) mesh = kprime.mesh();
  return check_points(domain, mesh, n);
}

double ResidualReport::worst() const {
  double m = 0.0;
  for (const auto& [name, v] : entries) {
    if (!std::isfinite(v)) return INFINITY;
    m = std::max(m, v);
  }
  return m;
}

double ResidualReport::at(std::string_view name) const {
  for (const auto& [n, v] : entries)
    if (n == name) return v;
  throw std::out_of_range("no residual named " + std::string(name));
}

ResidualReport make_report(std::vector<std::pair<std::string, double>> entries, int samples, double tolerance) {
  ResidualReport r{std::move(entries), samples, tolerance, true};
  for (const auto& [name, v] : r.entries)
    if (!std::isfinite(v) || v < 0.0 || v >= tolerance) r.passed = false;
  return r;
}

nlohmann::json report_to_json(const ResidualReport& r) {
  nlohmann::json entries = nlohmann::json::object();
  for (const auto& [name, v] : r.entries) entries[name] = std::isfinite(v) ? nlohmann::json(v) : nlohmann::json("inf");
  return {{"residuals", entries}, {"samples", r.samples}, {"tolerance", r.tolerance}, {"passed", r.passed}};
}

void write_candidate_csv(std::ostream& os, const SolitonCandidate& c, const std::vector<double>& points) {
  os << "r,h,theta,kprime\n";
  for (double x : points) {
    ProfileEvaluator ev(x);
    os << format_double(x) << ',' << format_double(ev.value(c.h)) << ',' << format_double(ev.value(c.theta)) << ','
       << format_double(ev.value(c.kprime)) << '\n';
  }
}

}  // namespace g2
