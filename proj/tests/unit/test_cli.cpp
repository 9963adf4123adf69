#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "g2/cli/run.hpp"
#include "g2/cli/verify.hpp"
#include "g2/error.hpp"

using namespace g2;
using namespace g2::cli;
namespace fs = std::filesystem;

namespace {

json minimal_flow() {
  return json::parse(R"json({"structure": "CY",
                         "domain": {"kind": "circle", "n": 32},
                         "initial": {"h": "1", "theta": "0.01*sin(r)"},
                         "t_end": 0.05})json");
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("g2coflow_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string config_error(const std::string& command, const json& raw) {
  try {
    parse_config(command, raw);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("flow defaults are filled in") {
  const auto c = parse_config("flow", minimal_flow());
  CHECK(c.params["cfl"] == 0.2);
  CHECK(c.params["stencil_order"] == 4);
  CHECK(c.params["dt"].is_null());
  CHECK(c.params["initial"]["G"] == "1");
  CHECK(c.params["output_times"] == json::array());

  const auto f = flow_config(c.params);
  CHECK(f.options.cfl == 0.2);
  CHECK(f.options.stencil_order == 4);
  CHECK(std::isinf(f.options.max_dt));
  CHECK(f.initial.mesh.n == 32);
}

TEST_CASE("resolved configs are fixed points of parsing") {
  const auto once = parse_config("flow", minimal_flow());
  const auto twice = parse_config("flow", once.params);
  CHECK(once.params == twice.params);

  const auto nk = parse_config("soliton.nk", {{"family", "sinecone"}});
  CHECK(nk.params["family"] == "SineCone");
  CHECK(nk.params["domain"]["kind"] == "interval");
  CHECK(parse_config("soliton.nk", nk.params).params == nk.params);

  const auto back = run_config_from_json(run_config_to_json(nk));
  CHECK(back.command == "soliton.nk");
  CHECK(back.params == nk.params);
}

TEST_CASE("config errors name the key path") {
  auto j = minimal_flow();
  j["cflx"] = 0.1;
  CHECK(config_error("flow", j).find("flow.cflx: unknown key") != std::string::npos);

  j = minimal_flow();
  j["domain"]["width"] = 3;
  CHECK(config_error("flow", j).find("flow.domain.width") != std::string::npos);

  j = minimal_flow();
  j["dt"] = -0.1;
  CHECK(config_error("flow", j).find("flow.dt: must be positive") != std::string::npos);

  j = minimal_flow();
  j.erase("t_end");
  CHECK(config_error("flow", j).find("flow.t_end: missing required key") != std::string::npos);

  j = minimal_flow();
  j["output_times"] = {0.03, 0.01};
  CHECK(config_error("flow", j).find("flow.output_times") != std::string::npos);

  j = minimal_flow();
  j["initial"]["theta"] = "sin(";
  CHECK(config_error("flow", j).find("flow.initial.theta") != std::string::npos);

  j = minimal_flow();
  j["stencil_order"] = 3;
  CHECK(!config_error("flow", j).empty());

  CHECK(config_error("verify", {{"suite", "everything"}}).find("verify.suite") != std::string::npos);
  CHECK(config_error("soliton.nk", {{"family", "SineCone"}, {"lambda", 2.0}}).find("soliton.nk.lambda") != std::string::npos);
  CHECK(config_error("soliton.nk", {{"family", "Cylinder"}, {"b", -1.0}}).find("Cylinder") != std::string::npos);
  CHECK(config_error("launch", json::object()).find("unknown command") != std::string::npos);
}

TEST_CASE("expression strings become closed-form profiles") {
  ConfigReader r({{"h", "sin(r)"}}, "t");
  const Profile h = read_profile(r, "h", Domain::line());
  CHECK_FALSE(h.is_sampled());
  for (double x : {-0.7, 0.3, 1.9}) {
    const auto j = h.jet_at(x);
    CHECK(j.value == doctest::Approx(std::sin(x)).epsilon(1e-15));
    CHECK(j.derivs[0] == doctest::Approx(std::cos(x)).epsilon(1e-15));
    CHECK(j.derivs[1] == doctest::Approx(-std::sin(x)).epsilon(1e-15));
    CHECK(j.derivs[3] == doctest::Approx(std::sin(x)).epsilon(1e-15));
  }
  CHECK(r.finish() == json{{"h", "sin(r)"}});
}

TEST_CASE("thread cap and parallel sweeps") {
  ::setenv("COFLOW_THREADS", "3", 1);
  CHECK(thread_cap() == 3);
  ::setenv("COFLOW_THREADS", "zero", 1);
  CHECK_THROWS_AS(thread_cap(), ConfigError);
  ::unsetenv("COFLOW_THREADS");
  CHECK(thread_cap() >= 1);

  std::vector<int> hits(50, 0);
  parallel_for(50, 4, [&](int i) { hits[i] += 1; });
  for (int h : hits) CHECK(h == 1);
  CHECK_THROWS_AS(parallel_for(10, 3, [](int i) { if (i == 7) throw InvalidParams("seven"); }), InvalidParams);
}

TEST_CASE("suite reports do not depend on the worker count") {
  const auto a = identity_suite(11, 6, 10, 1).to_json().dump();
  const auto b = identity_suite(11, 6, 10, 4).to_json().dump();
  CHECK(a == b);
  CHECK(identity_suite(11, 6, 10, 2).passed());
  CHECK(identity_suite(12, 6, 10, 2).to_json().dump() != a);
}

TEST_CASE("sine-cone run writes a candidate and a manifest") {
  const auto dir = scratch("nk");
  std::ostringstream out;
  const auto o = run(parse_config("soliton.nk", {{"family", "sinecone"}}, dir.string()), out);
  CHECK(o.exit_code == kExitOk);
  CHECK(o.summary["passed"] == true);
  CHECK(slurp(dir / "candidate.csv").rfind("r,h,theta,kprime\n", 0) == 0);

  const auto m = load_json_file((dir / "manifest.json").string());
  for (const char* k : {"config", "versions", "wall_time", "status"}) CHECK(m.contains(k));
  CHECK(m["status"] == "passed");
  CHECK(m["config"]["params"]["family"] == "SineCone");
  CHECK(m["artifacts"] == json{"candidate.csv", "residuals.json"});
  CHECK(json::parse(out.str())["lambda"] == -16.0);
}

TEST_CASE("flow output is deterministic and reproducible from its manifest") {
  auto cfg = minimal_flow();
  cfg["output_times"] = {0.02};
  const auto a = scratch("flow_a"), b = scratch("flow_b"), c = scratch("flow_c");
  std::ostringstream sink;
  CHECK(run(parse_config("flow", cfg, a.string()), sink).exit_code == kExitOk);
  CHECK(run(parse_config("flow", cfg, b.string()), sink).exit_code == kExitOk);
  CHECK(rerun_from_manifest((a / "manifest.json").string(), c.string(), sink).exit_code == kExitOk);
  for (const char* f : {"snapshot_0000.csv", "snapshot_0001.csv", "diagnostics.csv"}) {
    const auto ref = slurp(a / f);
    CHECK_FALSE(ref.empty());
    CHECK(slurp(b / f) == ref);
    CHECK(slurp(c / f) == ref);
  }
  CHECK(slurp(a / "snapshot_0000.csv").rfind("r,h,theta,G,constraint_residual,tau0\n", 0) == 0);
}

TEST_CASE("exit codes for tolerance failures and run-time errors") {
  std::ostringstream sink;
  const json wrong = {{"h", "sin(r)"},
                      {"theta", "r/3"},
                      {"lambda", -15.0},
                      {"domain", {{"kind", "interval"}, {"r0", 0.0}, {"r1", std::numbers::pi}}}};
  const auto bad = run(parse_config("residual", wrong, scratch("res").string()), sink);
  CHECK(bad.exit_code == kExitTolerance);
  CHECK(bad.status == "tolerance_failure");

  // Trajectories stop at h' = 0 before reaching r1, so no bracket exists.
  const json shoot = {{"start", {{"h", std::sin(1.2)}, {"dh", std::cos(1.2)}, {"d2h", -std::sin(1.2)}}},
                      {"r0", 1.2},
                      {"r1", 2.0},
                      {"target", 0.0},
                      {"lambda_lo", -17.0},
                      {"lambda_hi", -15.0}};
  const auto dir = scratch("shoot");
  const auto err = run(parse_config("soliton.shoot", shoot, dir.string()), sink);
  CHECK(err.exit_code == kExitTolerance);
  CHECK(err.status == "error");
  CHECK(err.summary["error"] == "NoBracket");
  CHECK(load_json_file((dir / "manifest.json").string())["status"] == "error");
}

TEST_CASE("manifest versions") {
  const auto v = versions();
  CHECK(v["g2coflow"] == "0.1.0");
  CHECK(v.contains("compiler"));
}
