#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "g2/coflow/flow.hpp"
#include "g2/soliton/shoot.hpp"
#include "g2/soliton/special.hpp"

namespace g2::cli {

using nlohmann::json;

/// Reads one JSON object while recording the resolved value of every key it
/// touches. finish() rejects keys nobody asked for, naming their full path.
class ConfigReader {
 public:
  ConfigReader(const json& j, std::string path);

  bool has(std::string_view key) const;

  double number(std::string_view key, std::optional<double> fallback = {});
  /// Absent or null keys resolve to null.
  std::optional<double> optional_number(std::string_view key);
  int integer(std::string_view key, std::optional<int> fallback = {});
  std::string text(std::string_view key, std::optional<std::string> fallback = {});
  bool flag(std::string_view key, bool fallback);
  std::vector<double> numbers(std::string_view key, std::vector<double> fallback);
  /// The raw value, copied into the resolved config unchanged.
  const json& value(std::string_view key);

  /// Reader over a nested object; store its finish() with put().
  ConfigReader child(std::string_view key);
  void put(std::string_view key, json v);

  std::string path_of(std::string_view key) const;
  [[noreturn]] void fail(std::string_view key, const std::string& what) const;

  json finish();

 private:
  const json* find(std::string_view key) const;
  const json& require(std::string_view key) const;

  json raw_;
  std::string path_;
  json resolved_ = json::object();
};

/// Reads a JSON file; unreadable or malformed files are ConfigErrors.
json load_json_file(const std::string& path);

struct DomainSpec {
  Domain domain;
  int n = 0;  ///< mesh nodes, when the command needs a mesh
};

/// {kind: line|circle|interval, r0, r1 | period, n}.
DomainSpec read_domain(ConfigReader& r, bool need_nodes);

/// An expression string, or {"file": path} naming a serialized profile.
Profile read_profile(ConfigReader& r, std::string_view key, const Domain& d);

struct FlowConfig {
  FlowState initial;
  double t_end = 0.0;
  std::vector<double> output_times;
  FlowOptions options;
};

struct VerifyConfig {
  std::string suite = "identities";
  std::uint64_t seed = 7;
  int profiles = 20;
  int points = 50;
  double tolerance_scale = 1.0;  ///< multiplies every identity tolerance
};

struct TorsionConfig {
  G2Profile g;
  int samples = 200;
  bool csv = true;
  double tolerance = 1e-10;  ///< for tau2 = 0 and closed-form agreement
};

struct CandidateConfig {
  SolitonCandidate candidate;
  int samples = 200;
  double tolerance = 1e-10;
  bool form = true;  ///< also evaluate form_residual
};

struct ReduceConfig {
  ReducedState start;
  double lambda = 0.0;
  double r0 = 0.0;
  double span = 1.0;
  int u_sign = 1;
  int nodes = 401;
  double tolerance = 1e-6;
  ReducedOptions ode;
};

/// One resolved command. `params` has every default filled in, so it alone
/// reproduces the run.
struct RunConfig {
  std::string command;  ///< verify, torsion, flow, residual, soliton.{cy,nk,reduce,shoot}
  json params;
  std::string output_dir = ".";
};

/// Validates `raw` for `command` and fills defaults. Throws ConfigError with
/// the key path on unknown keys, wrong types or invalid values.
RunConfig parse_config(const std::string& command, const json& raw, const std::string& output_dir = ".");

json run_config_to_json(const RunConfig& c);
RunConfig run_config_from_json(const json& j);

// Typed views of resolved (or raw) parameters.
VerifyConfig verify_config(const json& params, json* resolved = nullptr);
TorsionConfig torsion_config(const json& params, json* resolved = nullptr);
FlowConfig flow_config(const json& params, json* resolved = nullptr);
CandidateConfig residual_config(const json& params, json* resolved = nullptr);
CandidateConfig cy_config(const json& params, json* resolved = nullptr);
CandidateConfig nk_config(const json& params, json* resolved = nullptr);
ReduceConfig reduce_config(const json& params, json* resolved = nullptr);
ShootConfig shoot_config(const json& params, json* resolved = nullptr);

}  // namespace g2::cli
