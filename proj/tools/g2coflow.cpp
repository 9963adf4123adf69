// Command-line front end. Flags and --config files both become one raw JSON
// object per command (flags win), which parse_config resolves and run executes.
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "g2/cli/run.hpp"
#include "g2/error.hpp"

namespace {

using g2::cli::json;

// Options that were given on the command line, applied over the config file.
class Overrides {
 public:
  explicit Overrides(CLI::App* app) : app_(app) {
    app_->add_option("--config", config_path_, "JSON config file; flags override its keys");
  }

  template <class T>
  Overrides& option(const std::string& flag, const std::string& key, const std::string& help) {
    auto v = std::make_shared<T>();
    CLI::Option* opt = app_->add_option(flag, *v, help);
    setters_.push_back([v, opt, key](json& j) {
      if (opt->count()) j[key] = *v;
    });
    return *this;
  }

  Overrides& negated(const std::string& flag, const std::string& key, const std::string& help) {
    CLI::Option* opt = app_->add_flag(flag, help);
    setters_.push_back([opt, key](json& j) {
      if (opt->count()) j[key] = false;
    });
    return *this;
  }

  /// "line", "circle[:period]" or "interval:r0:r1".
  Overrides& domain(const std::string& help) {
    auto v = std::make_shared<std::string>();
    CLI::Option* opt = app_->add_option("--domain", *v, help);
    setters_.push_back([v, opt](json& j) {
      if (opt->count()) j["domain"] = parse_domain_flag(*v);
    });
    return *this;
  }

  json build() const {
    json j = config_path_.empty() ? json::object() : g2::cli::load_json_file(config_path_);
    if (!j.is_object()) throw g2::ConfigError(config_path_ + ": expected a JSON object");
    for (const auto& s : setters_) s(j);
    return j;
  }

  CLI::App* app() const { return app_; }

 private:
  static json parse_domain_flag(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    auto num = [&](std::size_t i) {
      try {
        std::size_t used = 0;
        const double v = std::stod(parts.at(i), &used);
        if (used != parts[i].size()) throw std::invalid_argument(parts[i]);
        return v;
      } catch (const std::exception&) {
        throw g2::ConfigError("--domain: cannot read '" + text + "'");
      }
    };
    if (parts.size() == 1 && parts[0] == "line") return {{"kind", "line"}};
    if (!parts.empty() && parts[0] == "circle" && parts.size() <= 2) {
      json j = {{"kind", "circle"}};
      if (parts.size() == 2) j["period"] = num(1);
      return j;
    }
    if (parts.size() == 3 && parts[0] == "interval") return {{"kind", "interval"}, {"r0", num(1)}, {"r1", num(2)}};
    throw g2::ConfigError("--domain: expected line, circle[:period] or interval:r0:r1, got '" + text + "'");
  }

  CLI::App* app_;
  std::string config_path_;
  std::vector<std::function<void(json&)>> setters_;
};

void print_error(const std::string& kind, const std::string& message) {
  std::cerr << json{{"error", kind}, {"message", message}}.dump() << '\n';
}

void print_error(const g2::Error& e) {
  // what() is "<kind>: <message>"
  print_error(e.kind(), std::string(e.what()).substr(e.kind().size() + 2));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Laplacian coflow of warped G2-structures: identities, flows and solitons"};
  // Long-only help: profile flags such as --h would collide with -h.
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  app.fallthrough();
  std::string out_dir = ".";
  app.add_option("--out", out_dir, "Directory for CSV, JSON and manifest output")->capture_default_str();

  std::vector<std::pair<std::string, std::unique_ptr<Overrides>>> commands;
  auto command = [&](CLI::App* sub, std::string name) -> Overrides& {
    commands.emplace_back(std::move(name), std::make_unique<Overrides>(sub));
    return *commands.back().second;
  };

  command(app.add_subcommand("verify", "Run a seeded identity suite"), "verify")
      .option<std::string>("--suite", "suite", "identities, laplacian, solitons or all")
      .option<long>("--seed", "seed", "Random seed")
      .option<int>("--profiles", "profiles", "Number of random profiles")
      .option<int>("--points", "points", "Evaluation points per profile")
      .option<double>("--tolerance-scale", "tolerance_scale", "Multiply every tolerance");

  command(app.add_subcommand("torsion", "Torsion forms of a profile triple"), "torsion")
      .option<std::string>("--structure", "structure", "CY or NK")
      .option<std::string>("--h", "h", "Expression for h(r)")
      .option<std::string>("--theta", "theta", "Expression for theta(r)")
      .option<std::string>("--G", "G", "Expression for G(r)")
      .domain("line, circle[:period] or interval:r0:r1")
      .option<int>("--samples", "samples", "Sample points")
      .option<double>("--tolerance", "tolerance", "Identity tolerance")
      .negated("--no-csv", "csv", "Skip torsion.csv");

  command(app.add_subcommand("flow", "Evolve initial data by the coflow"), "flow")
      .option<double>("--t-end", "t_end", "Final time")
      .option<double>("--cfl", "cfl", "CFL constant")
      .option<double>("--dt", "dt", "Upper bound on the time step")
      .option<int>("--stencil-order", "stencil_order", "Finite-difference accuracy");

  command(app.add_subcommand("residual", "Soliton residuals of a candidate"), "residual")
      .option<std::string>("--structure", "structure", "CY or NK")
      .option<std::string>("--h", "h", "Expression for h(r)")
      .option<std::string>("--theta", "theta", "Expression for theta(r)")
      .option<std::string>("--kprime", "kprime", "Expression for k'(r)")
      .option<double>("--lambda", "lambda", "Soliton constant")
      .domain("line, circle[:period] or interval:r0:r1")
      .option<int>("--samples", "samples", "Sample points")
      .option<double>("--tolerance", "tolerance", "Residual tolerance");

  CLI::App* soliton = app.add_subcommand("soliton", "Explicit, reduced and shooting solitons");
  soliton->require_subcommand(1);
  command(soliton->add_subcommand("cy", "Closed-form CY soliton"), "soliton.cy")
      .option<double>("--b", "b", "Real parameter b")
      .option<double>("--c", "c", "Real parameter c")
      .domain("line, circle[:period] or interval:r0:r1")
      .option<int>("--samples", "samples", "Sample points")
      .option<double>("--tolerance", "tolerance", "Residual tolerance");
  command(soliton->add_subcommand("nk", "Explicit NK soliton family"), "soliton.nk")
      .option<std::string>("--family", "family", "Cone, AntiCone, Cylinder or SineCone")
      .option<double>("--b", "b", "Family parameter b")
      .option<double>("--c", "c", "Cylinder k'")
      .option<double>("--lambda", "lambda", "Soliton constant (Cone, AntiCone)")
      .domain("line, circle[:period] or interval:r0:r1")
      .option<int>("--samples", "samples", "Sample points")
      .option<double>("--tolerance", "tolerance", "Residual tolerance");
  command(soliton->add_subcommand("reduce", "Integrate the reduced ODE and recover theta, k'"), "soliton.reduce")
      .option<double>("--h0", "h0", "h at r0")
      .option<double>("--dh0", "dh0", "h' at r0")
      .option<double>("--ddh0", "ddh0", "h'' at r0")
      .option<double>("--lambda", "lambda", "Soliton constant")
      .option<double>("--r0", "r0", "Start point")
      .option<double>("--span", "span", "Signed integration length")
      .option<int>("--u-sign", "u_sign", "Branch of sin 3theta (+1 or -1)")
      .option<int>("--nodes", "nodes", "Recovery mesh nodes")
      .option<double>("--rtol", "rtol", "Relative tolerance")
      .option<double>("--atol", "atol", "Absolute tolerance")
      .option<double>("--tolerance", "tolerance", "Residual tolerance");
  command(soliton->add_subcommand("shoot", "Shoot for lambda from boundary data"), "soliton.shoot");

  CLI::App* rerun = app.add_subcommand("rerun", "Repeat a run from its manifest");
  std::string manifest;
  rerun->add_option("manifest", manifest, "manifest.json of an earlier run")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error("UsageError", e.what());
    return g2::cli::kExitConfig;
  }

  try {
    if (rerun->parsed()) {
      const bool moved = app.get_option("--out")->count() > 0;
      return g2::cli::rerun_from_manifest(manifest, moved ? std::optional(out_dir) : std::nullopt, std::cout).exit_code;
    }
    for (const auto& [name, o] : commands) {
      if (!o->app()->parsed()) continue;
      const auto config = g2::cli::parse_config(name, o->build(), out_dir);
      return g2::cli::run(config, std::cout).exit_code;
    }
    print_error("UsageError", "no command given");
    return g2::cli::kExitConfig;
  } catch (const g2::ConfigError& e) {
    print_error(e);
    return g2::cli::kExitConfig;
  } catch (const g2::Error& e) {
    print_error(e);
    return g2::cli::kExitTolerance;
  } catch (const std::exception& e) {
    print_error("InternalError", e.what());
    return g2::cli::kExitTolerance;
  }
}
