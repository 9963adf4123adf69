#include "g2/cli/run.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "g2/cli/verify.hpp"
#include "g2/error.hpp"
#include "g2/profiles/serialize.hpp"
#include "g2/soliton/soliton.hpp"
#include "g2/torsion/torsion.hpp"

#ifndef G2COFLOW_VERSION
#define G2COFLOW_VERSION "unknown"
#endif

namespace g2::cli {

namespace fs = std::filesystem;

json versions() {
  return {{"g2coflow", G2COFLOW_VERSION},
          {"compiler", __VERSION__},
          {"cxx_standard", static_cast<long>(__cplusplus)},
          {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_PATCH)}};
}

namespace {

// Every artifact goes through here so the manifest lists exactly what exists.
class Artifacts {
 public:
  explicit Artifacts(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

  std::ofstream open(const std::string& name) {
    std::ofstream f(dir_ / name, std::ios::binary);
    if (!f) throw Error("IOError", "cannot write " + (dir_ / name).string());
    names_.push_back(name);
    return f;
  }
  void write_json(const std::string& name, const json& j) { open(name) << j.dump(2) << '\n'; }

  const fs::path& dir() const { return dir_; }
  std::vector<std::string> take() { return std::move(names_); }

 private:
  fs::path dir_;
  std::vector<std::string> names_;
};

json finite_or_string(double v) { return std::isfinite(v) ? json(v) : json(std::isnan(v) ? "nan" : "inf"); }

Outcome run_verify(const json& params, Artifacts& art) {
  const auto c = verify_config(params);
  const auto rep = run_suite(c.suite, c.seed, c.profiles, c.points, thread_cap(), c.tolerance_scale);
  Outcome o;
  o.summary = rep.to_json();
  art.write_json("verify_report.json", o.summary);
  o.exit_code = rep.passed() ? kExitOk : kExitTolerance;
  o.status = rep.passed() ? "passed" : "tolerance_failure";
  return o;
}

Outcome run_torsion(const json& params, Artifacts& art) {
  const auto c = torsion_config(params);
  const auto& g = c.g;
  const auto pts = g.check_points(c.samples);
  const auto rep = torsion_report(g);
  const auto fp = tau01_first_principles(g);
  const auto purity = tau3_purity(g, rep.tau3);

  double tau0_sup = 0.0, tau1_sup = 0.0, agree0 = 0.0, agree1 = 0.0;
  for (double x : pts) {
    const double t0 = rep.tau0.value_at(x), t1 = rep.tau1_coeff.value_at(x);
    tau0_sup = std::max(tau0_sup, std::abs(t0));
    tau1_sup = std::max(tau1_sup, std::abs(t1));
    agree0 = std::max(agree0, std::abs(t0 - fp.tau0.value_at(x)));
    agree1 = std::max(agree1, std::abs(t1 - fp.tau1.value_at(x)));
  }
  const bool ok = rep.tau2_norm < c.tolerance && agree0 < c.tolerance && agree1 < c.tolerance;

  Outcome o;
  o.summary = {{"structure", structure_name(g.structure)},
               {"samples", pts.size()},
               {"tau0_sup", tau0_sup},
               {"tau1_sup", tau1_sup},
               {"tau2_norm", rep.tau2_norm},
               {"coclosed_residual", rep.coclosed_residual},
               {"coclosed", rep.coclosed_residual < kConstraintTol},
               {"tau3_purity", {{"against_phi", purity.against_phi}, {"against_seven", purity.against_seven}}},
               {"closed_vs_first_principles", {{"tau0", agree0}, {"tau1", agree1}}},
               {"tolerance", c.tolerance},
               {"passed", ok}};
  art.write_json("torsion.json", o.summary);
  if (c.csv) {
    auto f = art.open("torsion.csv");
    f << "r,tau0,tau1\n";
    for (double x : pts)
      f << format_double(x) << ',' << format_double(rep.tau0.value_at(x)) << ','
        << format_double(rep.tau1_coeff.value_at(x)) << '\n';
  }
  o.exit_code = ok ? kExitOk : kExitTolerance;
  o.status = ok ? "passed" : "tolerance_failure";
  return o;
}

void write_snapshot(std::ostream& f, const FlowState& s, int order) {
  const auto c = constraint_residual(s, order);
  const auto t0 = tau0_field(s, order);
  f << "r,h,theta,G,constraint_residual,tau0\n";
  for (int i = 0; i < s.mesh.n; ++i)
    f << format_double(s.mesh.node(i)) << ',' << format_double(s.h[i]) << ',' << format_double(s.theta[i]) << ','
      << format_double(s.G[i]) << ',' << format_double(c[i]) << ',' << format_double(t0[i]) << '\n';
}

Outcome run_flow_command(const json& params, Artifacts& art) {
  const auto c = flow_config(params);
  const auto res = run_flow(c.initial, c.t_end, c.output_times, c.options);

  json snaps = json::array();
  for (std::size_t k = 0; k < res.snapshots.size(); ++k) {
    char name[32];
    std::snprintf(name, sizeof name, "snapshot_%04zu.csv", k);
    auto f = art.open(name);
    write_snapshot(f, res.snapshots[k], c.options.stencil_order);
    snaps.push_back({{"t", res.snapshots[k].t}, {"file", name}});
  }
  {
    auto f = art.open("diagnostics.csv");
    f << "t,dt,constraint_sup,tau0_sup,min_h,min_G\n";
    for (const auto& d : res.diagnostics)
      f << format_double(d.t) << ',' << format_double(d.dt) << ',' << format_double(d.constraint_sup) << ','
        << format_double(d.tau0_sup) << ',' << format_double(d.min_h) << ',' << format_double(d.min_G) << '\n';
  }

  Outcome o;
  o.status = std::string(status_name(res.status));
  json last = json::object();
  if (!res.diagnostics.empty()) {
    const auto& d = res.diagnostics.back();
    last = {{"t", d.t}, {"constraint_sup", finite_or_string(d.constraint_sup)}, {"tau0_sup", finite_or_string(d.tau0_sup)},
            {"min_h", finite_or_string(d.min_h)}, {"min_G", finite_or_string(d.min_G)}};
  }
  o.summary = {{"status", o.status}, {"message", res.message},   {"steps", res.diagnostics.size()},
               {"snapshots", snaps}, {"final", last}};
  // A singularity is a legitimate outcome of the flow; losing the constraint
  // is a numerical failure.
  o.exit_code = res.status == FlowStatus::ConstraintBlowup ? kExitTolerance : kExitOk;
  return o;
}

json candidate_json(const SolitonCandidate& s) {
  return {{"family", family_name(s.family)},
          {"structure", structure_name(s.structure)},
          {"lambda", s.lambda},
          {"soliton_type", s.soliton_type()},
          {"domain", domain_to_json(s.domain)}};
}

Outcome run_candidate(const CandidateConfig& c, Artifacts& art) {
  const auto& s = c.candidate;
  const auto sys = s.structure == StructureKind::CY ? residuals_cy(s, c.samples, c.tolerance)
                                                   : residuals_nk(s, c.samples, c.tolerance);
  json summary = candidate_json(s);
  summary["system"] = report_to_json(sys);
  bool ok = sys.passed;
  if (c.form) {
    try {
      const auto form = form_residual(s, c.samples, c.tolerance);
      summary["form"] = report_to_json(form);
      ok = ok && form.passed;
    } catch (const ConstraintViolated& e) {
      summary["form"] = {{"error", e.kind()}, {"message", e.what()}, {"passed", false}};
      ok = false;
    }
  }
  summary["passed"] = ok;

  auto f = art.open("candidate.csv");
  write_candidate_csv(f, s, s.samples(c.samples));
  art.write_json("residuals.json", summary);
  return {ok ? kExitOk : kExitTolerance, ok ? "passed" : "tolerance_failure", summary, {}};
}

Outcome run_reduce(const json& params, Artifacts& art) {
  const auto c = reduce_config(params);
  const auto t = integrate_reduced(c.start, c.lambda, c.r0, c.r0 + c.span, c.ode);
  const auto rec = recover_theta_k(t, c.u_sign, c.nodes);
  const auto rep = residuals_nk(rec.candidate, 200, c.tolerance);

  json summary = candidate_json(rec.candidate);
  summary["trajectory"] = {{"status", status_name(t.status())},
                           {"r_begin", t.r_begin()},
                           {"r_end", t.r_end()},
                           {"steps", t.steps()}};
  summary["sign_check"] = rec.sign_check;
  summary["system"] = report_to_json(rep);
  summary["passed"] = rep.passed;

  auto f = art.open("candidate.csv");
  write_candidate_csv(f, rec.candidate, rec.candidate.h.mesh()->nodes());
  art.write_json("residuals.json", summary);
  return {rep.passed ? kExitOk : kExitTolerance, rep.passed ? "passed" : "tolerance_failure", summary, {}};
}

Outcome run_shoot(const json& params, Artifacts& art) {
  const auto c = shoot_config(params);
  const auto res = shoot(c);
  json summary = {{"status", status_name(res.status)},
                  {"lambda", finite_or_string(res.lambda)},
                  {"closing", finite_or_string(res.closing)},
                  {"iterations", res.iterations},
                  {"bracket", {finite_or_string(res.bracket_lo), finite_or_string(res.bracket_hi)}},
                  {"f_bracket", {finite_or_string(res.f_lo), finite_or_string(res.f_hi)}},
                  {"message", res.message}};
  if (res.report) summary["system"] = report_to_json(*res.report);
  if (res.candidate) {
    auto f = art.open("candidate.csv");
    write_candidate_csv(f, *res.candidate, res.candidate->h.mesh()->nodes());
  }
  art.write_json("residuals.json", summary);
  const bool ok = res.status == ShootStatus::Found;
  return {ok ? kExitOk : kExitTolerance, std::string(status_name(res.status)), summary, {}};
}

Outcome dispatch(const RunConfig& c, Artifacts& art) {
  const auto& p = c.params;
  if (c.command == "verify") return run_verify(p, art);
  if (c.command == "torsion") return run_torsion(p, art);
  if (c.command == "flow") return run_flow_command(p, art);
  if (c.command == "residual") return run_candidate(residual_config(p), art);
  if (c.command == "soliton.cy") return run_candidate(cy_config(p), art);
  if (c.command == "soliton.nk") return run_candidate(nk_config(p), art);
  if (c.command == "soliton.reduce") return run_reduce(p, art);
  if (c.command == "soliton.shoot") return run_shoot(p, art);
  throw ConfigError("unknown command '" + c.command + "'");
}

}  // namespace

Outcome run(const RunConfig& config, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  Artifacts art(config.output_dir);
  Outcome o;
  try {
    o = dispatch(config, art);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    o.exit_code = kExitTolerance;
    o.status = "error";
    o.summary = {{"error", e.kind()}, {"message", e.what()}};
  }
  o.artifacts = art.take();
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  json manifest = {{"config", run_config_to_json(config)},
                   {"versions", versions()},
                   {"wall_time", wall},
                   {"status", o.status},
                   {"exit_code", o.exit_code},
                   {"artifacts", o.artifacts}};
  std::ofstream(art.dir() / "manifest.json", std::ios::binary) << manifest.dump(2) << '\n';
  out << o.summary.dump(2) << '\n';
  return o;
}

Outcome rerun_from_manifest(const std::string& manifest_path, const std::optional<std::string>& output_dir,
                            std::ostream& out) {
  const json m = load_json_file(manifest_path);
  if (!m.is_object() || !m.contains("config")) throw ConfigError(manifest_path + ": no config section");
  RunConfig c = run_config_from_json(m.at("config"));
  if (output_dir) c.output_dir = *output_dir;
  return run(c, out);
}

}  // namespace g2::cli
