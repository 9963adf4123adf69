#include "g2/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>

#include "g2/error.hpp"
#include "g2/profiles/expression.hpp"
#include "g2/profiles/serialize.hpp"

namespace g2::cli {

ConfigReader::ConfigReader(const json& j, std::string path) : raw_(j), path_(std::move(path)) {
  if (raw_.is_null()) raw_ = json::object();
  if (!raw_.is_object()) throw ConfigError(path_ + ": expected a JSON object");
}

const json* ConfigReader::find(std::string_view key) const {
  const auto it = raw_.find(std::string(key));
  if (it == raw_.end() || it->is_null()) return nullptr;
  return &*it;
}

const json& ConfigReader::require(std::string_view key) const {
  const json* v = find(key);
  if (!v) fail(key, "missing required key");
  return *v;
}

bool ConfigReader::has(std::string_view key) const { return find(key) != nullptr; }

std::string ConfigReader::path_of(std::string_view key) const { return path_ + "." + std::string(key); }

void ConfigReader::fail(std::string_view key, const std::string& what) const {
  throw ConfigError(path_of(key) + ": " + what);
}

double ConfigReader::number(std::string_view key, std::optional<double> fallback) {
  double v = 0.0;
  if (const json* j = find(key)) {
    if (!j->is_number()) fail(key, "expected a number");
    v = j->get<double>();
    if (!std::isfinite(v)) fail(key, "expected a finite number");
  } else if (fallback) {
    v = *fallback;
  } else {
    require(key);
  }
  resolved_[std::string(key)] = v;
  return v;
}

std::optional<double> ConfigReader::optional_number(std::string_view key) {
  if (!has(key)) {
    resolved_[std::string(key)] = nullptr;
    return std::nullopt;
  }
  return number(key);
}

int ConfigReader::integer(std::string_view key, std::optional<int> fallback) {
  int v = 0;
  if (const json* j = find(key)) {
    if (!j->is_number()) fail(key, "expected an integer");
    const double d = j->get<double>();
    if (d != std::floor(d) || std::abs(d) > std::numeric_limits<int>::max()) fail(key, "expected an integer");
    v = static_cast<int>(d);
  } else if (fallback) {
    v = *fallback;
  } else {
    require(key);
  }
  resolved_[std::string(key)] = v;
  return v;
}

std::string ConfigReader::text(std::string_view key, std::optional<std::string> fallback) {
  std::string v;
  if (const json* j = find(key)) {
    if (!j->is_string()) fail(key, "expected a string");
    v = j->get<std::string>();
  } else if (fallback) {
    v = *fallback;
  } else {
    require(key);
  }
  resolved_[std::string(key)] = v;
  return v;
}

bool ConfigReader::flag(std::string_view key, bool fallback) {
  bool v = fallback;
  if (const json* j = find(key)) {
    if (!j->is_boolean()) fail(key, "expected true or false");
    v = j->get<bool>();
  }
  resolved_[std::string(key)] = v;
  return v;
}

std::vector<double> ConfigReader::numbers(std::string_view key, std::vector<double> fallback) {
  std::vector<double> v = std::move(fallback);
  if (const json* j = find(key)) {
    if (!j->is_array()) fail(key, "expected an array of numbers");
    v.clear();
    for (const auto& x : *j) {
      if (!x.is_number()) fail(key, "expected an array of numbers");
      v.push_back(x.get<double>());
    }
  }
  resolved_[std::string(key)] = v;
  return v;
}

const json& ConfigReader::value(std::string_view key) {
  const json& v = require(key);
  resolved_[std::string(key)] = v;
  return v;
}

ConfigReader ConfigReader::child(std::string_view key) {
  const json* j = find(key);
  return ConfigReader(j ? *j : json::object(), path_of(key));
}

void ConfigReader::put(std::string_view key, json v) { resolved_[std::string(key)] = std::move(v); }

json ConfigReader::finish() {
  for (const auto& [k, v] : raw_.items())
    if (!resolved_.contains(k)) fail(k, "unknown key");
  return resolved_;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("'" + path + "' is not valid JSON: " + e.what());
  }
}

DomainSpec read_domain(ConfigReader& r, bool need_nodes) {
  DomainSpec out;
  const std::string kind = r.text("kind", "line");
  try {
    if (kind == "line") {
      out.domain = Domain::line();
    } else if (kind == "circle") {
      out.domain = Domain::circle(r.number("period", 2.0 * std::numbers::pi));
    } else if (kind == "interval") {
      const double a = r.number("r0");
      out.domain = Domain::interval(a, r.number("r1"));
    } else {
      r.fail("kind", "expected line, circle or interval");
    }
  } catch (const DomainError& e) {
    r.fail(kind == "circle" ? "period" : "r1", e.what());
  }
  if (need_nodes) {
    if (out.domain.is_line()) r.fail("kind", "a mesh needs a circle or an interval");
    out.n = r.integer("n");
    if (out.n < 9) r.fail("n", "need at least 9 nodes");
  }
  return out;
}

Profile read_profile(ConfigReader& r, std::string_view key, const Domain& d) {
  const json& v = r.value(key);
  try {
    if (v.is_string()) return parse_expression(v.get<std::string>(), d);
    if (v.is_number()) return Profile::constant(v.get<double>(), d);
    if (v.is_object()) {
      ConfigReader f(v, r.path_of(key));
      const std::string file = f.text("file");
      f.finish();
      return profile_from_json(load_json_file(file)).on(d);
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    r.fail(key, e.what());
  }
  r.fail(key, "expected an expression string, a number or {\"file\": path}");
}

namespace {

StructureKind read_structure(ConfigReader& r, std::optional<std::string> fallback = {}) {
  const std::string s = r.text("structure", std::move(fallback));
  if (s == "CY" || s == "cy") return StructureKind::CY;
  if (s == "NK" || s == "nk") return StructureKind::NK;
  r.fail("structure", "expected CY or NK");
}

Domain nested_domain(ConfigReader& r, bool need_nodes, int* nodes = nullptr) {
  auto c = r.child("domain");
  const auto spec = read_domain(c, need_nodes);
  r.put("domain", c.finish());
  if (nodes) *nodes = spec.n;
  return spec.domain;
}

void positive(ConfigReader& r, std::string_view key, double v) {
  if (!(v > 0.0)) r.fail(key, "must be positive");
}

void store(json* resolved, json v) {
  if (resolved) *resolved = std::move(v);
}

ReducedOptions read_ode(ConfigReader& r) {
  ReducedOptions o;
  o.rtol = r.number("rtol", o.rtol);
  o.atol = r.number("atol", o.atol);
  positive(r, "rtol", o.rtol);
  positive(r, "atol", o.atol);
  return o;
}

int read_sign(ConfigReader& r) {
  const int s = r.integer("u_sign", 1);
  if (s != 1 && s != -1) r.fail("u_sign", "must be +1 or -1");
  return s;
}

}  // namespace

VerifyConfig verify_config(const json& params, json* resolved) {
  ConfigReader r(params, "verify");
  VerifyConfig c;
  c.suite = r.text("suite", c.suite);
  if (c.suite != "identities" && c.suite != "laplacian" && c.suite != "solitons" && c.suite != "all")
    r.fail("suite", "expected identities, laplacian, solitons or all");
  const int seed = r.integer("seed", 7);
  if (seed < 0) r.fail("seed", "must be non-negative");
  c.seed = static_cast<std::uint64_t>(seed);
  c.profiles = r.integer("profiles", c.profiles);
  c.points = r.integer("points", c.points);
  if (c.profiles < 1) r.fail("profiles", "must be at least 1");
  if (c.points < 1) r.fail("points", "must be at least 1");
  c.tolerance_scale = r.number("tolerance_scale", c.tolerance_scale);
  positive(r, "tolerance_scale", c.tolerance_scale);
  store(resolved, r.finish());
  return c;
}

TorsionConfig torsion_config(const json& params, json* resolved) {
  ConfigReader r(params, "torsion");
  TorsionConfig c;
  const auto s = read_structure(r);
  const Domain d = nested_domain(r, false);
  const Profile h = read_profile(r, "h", d), theta = read_profile(r, "theta", d);
  if (!r.has("G")) r.put("G", "1");
  const Profile G = r.has("G") ? read_profile(r, "G", d) : Profile(1.0);
  c.samples = r.integer("samples", c.samples);
  if (c.samples < 1) r.fail("samples", "must be at least 1");
  c.csv = r.flag("csv", c.csv);
  c.tolerance = r.number("tolerance", c.tolerance);
  positive(r, "tolerance", c.tolerance);
  try {
    c.g = G2Profile::make(h, theta, G, s, d);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("torsion: ") + e.what());
  }
  store(resolved, r.finish());
  return c;
}

FlowConfig flow_config(const json& params, json* resolved) {
  ConfigReader r(params, "flow");
  FlowConfig c;
  const auto s = read_structure(r);
  int n = 0;
  const Domain d = nested_domain(r, true, &n);
  auto init = r.child("initial");
  const Profile h = read_profile(init, "h", d), theta = read_profile(init, "theta", d);
  const Profile G = init.has("G") ? read_profile(init, "G", d) : Profile(1.0);
  if (!init.has("G")) init.put("G", "1");
  r.put("initial", init.finish());

  c.t_end = r.number("t_end");
  positive(r, "t_end", c.t_end);
  c.output_times = r.numbers("output_times", {});
  for (std::size_t i = 0; i < c.output_times.size(); ++i) {
    const double t = c.output_times[i];
    if (!(t > 0.0 && t <= c.t_end)) r.fail("output_times", "times must lie in (0, t_end]");
    if (i > 0 && !(t > c.output_times[i - 1])) r.fail("output_times", "times must be strictly increasing");
  }
  auto& o = c.options;
  o.cfl = r.number("cfl", o.cfl);
  if (!(o.cfl > 0.0 && o.cfl <= 1.0)) r.fail("cfl", "must lie in (0, 1]");
  o.stencil_order = r.integer("stencil_order", o.stencil_order);
  if (o.stencil_order < 2 || o.stencil_order > 8 || o.stencil_order % 2) r.fail("stencil_order", "must be 2, 4, 6 or 8");
  if (const auto dt = r.optional_number("dt")) {
    positive(r, "dt", *dt);
    o.max_dt = *dt;
  }
  o.floor = r.number("floor", o.floor);
  o.constraint_limit = r.number("constraint_limit", o.constraint_limit);
  o.init_tolerance = r.number("init_tolerance", o.init_tolerance);
  positive(r, "floor", o.floor);
  positive(r, "constraint_limit", o.constraint_limit);
  positive(r, "init_tolerance", o.init_tolerance);

  try {
    c.initial = FlowState::from_profiles(Mesh::uniform(d, n), h, theta, G, s);
  } catch (const Error& e) {
    throw ConfigError(std::string("flow.initial: ") + e.what());
  }
  store(resolved, r.finish());
  return c;
}

CandidateConfig residual_config(const json& params, json* resolved) {
  ConfigReader r(params, "residual");
  CandidateConfig c;
  auto& s = c.candidate;
  s.structure = read_structure(r, "NK");
  s.domain = nested_domain(r, false);
  s.h = read_profile(r, "h", s.domain);
  s.theta = read_profile(r, "theta", s.domain);
  if (!r.has("kprime")) r.put("kprime", "0");
  s.kprime = r.has("kprime") ? read_profile(r, "kprime", s.domain) : Profile(0.0).on(s.domain);
  s.lambda = r.number("lambda");
  s.family = Family::Custom;
  c.samples = r.integer("samples", c.samples);
  if (c.samples < 1) r.fail("samples", "must be at least 1");
  c.tolerance = r.number("tolerance", c.tolerance);
  positive(r, "tolerance", c.tolerance);
  c.form = r.flag("form", c.form);
  store(resolved, r.finish());
  return c;
}

CandidateConfig cy_config(const json& params, json* resolved) {
  ConfigReader r(params, "soliton.cy");
  CandidateConfig c;
  const double b = r.number("b"), cc = r.number("c");
  c.candidate = cy_closed_form(b, cc, nested_domain(r, false));
  c.samples = r.integer("samples", c.samples);
  if (c.samples < 1) r.fail("samples", "must be at least 1");
  c.tolerance = r.number("tolerance", c.tolerance);
  positive(r, "tolerance", c.tolerance);
  c.form = r.flag("form", c.form);
  store(resolved, r.finish());
  return c;
}

CandidateConfig nk_config(const json& params, json* resolved) {
  ConfigReader r(params, "soliton.nk");
  CandidateConfig c;
  Family f;
  try {
    f = family_from_name(r.text("family"));
  } catch (const InvalidParams& e) {
    r.fail("family", e.what());
  }
  if (f != Family::Cone && f != Family::AntiCone && f != Family::Cylinder && f != Family::SineCone)
    r.fail("family", "expected Cone, AntiCone, Cylinder or SineCone");
  r.put("family", std::string(family_name(f)));
  SpecialParams p;
  p.b = r.number("b", f == Family::Cylinder ? 1.0 : 0.0);
  p.c = r.number("c", 0.0);
  if (f == Family::Cone || f == Family::AntiCone) {
    p.lambda = r.number("lambda", 0.0);
  } else if (r.has("lambda")) {
    r.fail("lambda", "fixed by the " + std::string(family_name(f)) + " family");
  }
  if (r.has("domain")) p.domain = nested_domain(r, false);
  try {
    c.candidate = nk_special(f, p);
  } catch (const InvalidParams& e) {
    throw ConfigError(std::string("soliton.nk: ") + e.what());
  }
  if (!p.domain) r.put("domain", domain_to_json(c.candidate.domain));
  c.samples = r.integer("samples", c.samples);
  if (c.samples < 1) r.fail("samples", "must be at least 1");
  c.tolerance = r.number("tolerance", c.tolerance);
  positive(r, "tolerance", c.tolerance);
  c.form = r.flag("form", c.form);
  store(resolved, r.finish());
  return c;
}

ReduceConfig reduce_config(const json& params, json* resolved) {
  ConfigReader r(params, "soliton.reduce");
  ReduceConfig c;
  c.start.h = r.number("h0");
  c.start.dh = r.number("dh0");
  c.start.d2h = r.number("ddh0");
  c.lambda = r.number("lambda");
  c.r0 = r.number("r0", 0.0);
  c.span = r.number("span");
  if (c.span == 0.0) r.fail("span", "must be nonzero");
  c.u_sign = read_sign(r);
  c.nodes = r.integer("nodes", c.nodes);
  if (c.nodes < 9) r.fail("nodes", "need at least 9 nodes");
  c.tolerance = r.number("tolerance", c.tolerance);
  positive(r, "tolerance", c.tolerance);
  c.ode = read_ode(r);
  store(resolved, r.finish());
  return c;
}

ShootConfig shoot_config(const json& params, json* resolved) {
  ConfigReader r(params, "soliton.shoot");
  ShootConfig c;
  auto st = r.child("start");
  c.start.h = st.number("h");
  c.start.dh = st.number("dh");
  c.start.d2h = st.number("d2h");
  r.put("start", st.finish());
  c.r0 = r.number("r0");
  c.r1 = r.number("r1");
  if (c.r1 == c.r0) r.fail("r1", "must differ from r0");
  const std::string q = r.text("quantity", "dh");
  if (q == "h") c.quantity = ShootConfig::Quantity::h;
  else if (q == "dh") c.quantity = ShootConfig::Quantity::dh;
  else if (q == "d2h") c.quantity = ShootConfig::Quantity::d2h;
  else r.fail("quantity", "expected h, dh or d2h");
  c.target = r.number("target");
  c.lambda_lo = r.number("lambda_lo");
  c.lambda_hi = r.number("lambda_hi");
  if (!(c.lambda_lo < c.lambda_hi)) r.fail("lambda_hi", "must exceed lambda_lo");
  c.lambda_tol = r.number("lambda_tol", c.lambda_tol);
  positive(r, "lambda_tol", c.lambda_tol);
  c.max_iterations = r.integer("max_iterations", c.max_iterations);
  if (c.max_iterations < 1) r.fail("max_iterations", "must be at least 1");
  c.u_sign = read_sign(r);
  c.residual_tol = r.number("residual_tol", c.residual_tol);
  positive(r, "residual_tol", c.residual_tol);
  c.ode = read_ode(r);
  store(resolved, r.finish());
  return c;
}

RunConfig parse_config(const std::string& command, const json& raw, const std::string& output_dir) {
  RunConfig c;
  c.command = command;
  c.output_dir = output_dir;
  try {
    if (command == "verify") verify_config(raw, &c.params);
    else if (command == "torsion") torsion_config(raw, &c.params);
    else if (command == "flow") flow_config(raw, &c.params);
    else if (command == "residual") residual_config(raw, &c.params);
    else if (command == "soliton.cy") cy_config(raw, &c.params);
    else if (command == "soliton.nk") nk_config(raw, &c.params);
    else if (command == "soliton.reduce") reduce_config(raw, &c.params);
    else if (command == "soliton.shoot") shoot_config(raw, &c.params);
    else throw ConfigError("unknown command '" + command + "'");
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(command + ": " + e.what());
  }
  return c;
}

json run_config_to_json(const RunConfig& c) {
  return {{"command", c.command}, {"params", c.params}, {"output_dir", c.output_dir}};
}

RunConfig run_config_from_json(const json& j) {
  ConfigReader r(j, "config");
  const std::string command = r.text("command");
  const json params = r.has("params") ? r.value("params") : json::object();
  const std::string out = r.text("output_dir", ".");
  r.finish();
  return parse_config(command, params, out);
}

}  // namespace g2::cli
