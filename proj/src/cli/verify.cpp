#include "g2/cli/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <random>
#include <thread>

#include "g2/error.hpp"
#include "g2/soliton/soliton.hpp"
#include "g2/torsion/torsion.hpp"

namespace g2::cli {

bool SuiteReport::passed() const {
  return std::all_of(identities.begin(), identities.end(), [](const auto& i) { return i.passed(); });
}

nlohmann::json SuiteReport::to_json() const {
  nlohmann::json ids = nlohmann::json::array();
  for (const auto& i : identities) {
    nlohmann::json e;
    e["name"] = i.name;
    if (std::isfinite(i.max_residual)) e["max_residual"] = i.max_residual;
    else e["max_residual"] = "nan";
    e["tolerance"] = i.tolerance;
    e["passed"] = i.passed();
    ids.push_back(std::move(e));
  }
  return {{"suite", suite}, {"seed", seed},       {"profiles", profiles},
          {"points", points}, {"identities", ids}, {"passed", passed()}};
}

int thread_cap() {
  if (const char* env = std::getenv("COFLOW_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1 || v > 4096)
      throw ConfigError("COFLOW_THREADS must be a positive integer, got '" + std::string(env) + "'");
    return static_cast<int>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(int n, int threads, const std::function<void(int)>& body) {
  const int workers = std::clamp(threads, 1, std::max(1, n));
  if (workers == 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first;
  std::mutex mu;
  auto work = [&] {
    for (int i = next++; i < n; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!first) first = std::current_exception();
        next = n;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (first) std::rethrow_exception(first);
}

namespace {

std::vector<double> grid(double a, double b, int n) {
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = a + (b - a) * (i + 0.5) / n;
  return x;
}

double sup_form(const InvariantForm& f, const std::vector<double>& pts) {
  double m = 0.0;
  for (double x : pts) {
    const double v = f.sup_at(x);
    if (std::isnan(v)) return v;
    m = std::max(m, v);
  }
  return m;
}

double sup_diff(const Profile& a, const Profile& b, const std::vector<double>& pts) {
  double m = 0.0;
  for (double x : pts) m = std::max(m, std::abs(a.value_at(x) - b.value_at(x)));
  return m;
}

// Per-task maxima, reduced in index order so the result never depends on
// scheduling.
struct Table {
  std::vector<std::string> names;
  std::vector<double> tolerances;
  std::vector<std::vector<double>> rows;

  void reduce_into(SuiteReport& rep, double scale) const {
    for (std::size_t k = 0; k < names.size(); ++k) {
      double m = 0.0;
      for (const auto& row : rows) m = std::isnan(row[k]) || std::isnan(m) ? NAN : std::max(m, row[k]);
      rep.identities.push_back({names[k], m, tolerances[k] * scale});
    }
  }
};

}  // namespace

SuiteReport identity_suite(std::uint64_t seed, int profiles, int points, int threads, double scale) {
  std::mt19937_64 rng(seed);
  std::vector<G2Profile> gs;
  for (int i = 0; i < profiles; ++i)
    gs.push_back(random_g2_profile(rng, i % 2 ? StructureKind::NK : StructureKind::CY));
  const auto pts = grid(-2.0, 2.0, points);

  Table t{{"d_squared", "star_star", "dphi_closed", "dpsi_closed", "tau2_zero", "tau0_closed", "tau1_closed"},
          {1e-12, 1e-12, 1e-12, 1e-12, 1e-11, 1e-10, 1e-10},
          std::vector<std::vector<double>>(profiles)};
  parallel_for(profiles, threads, [&](int i) {
    const auto& g = gs[i];
    const auto s = g.structure;
    const auto phi = build_phi(g), psi = build_psi(g);
    double dd = std::max(sup_form(d(d(phi, s), s), pts), sup_form(d(d(psi, s), s), pts));
    double ss = 0.0;
    for (Basis b : kAllBasis) {
      const auto f = InvariantForm::basis(b, CProfile(g.h, g.theta));
      dd = std::max(dd, sup_form(d(d(f, s), s), pts));
      const auto a = InvariantForm::basis(b, CProfile(g.theta, g.G));
      ss = std::max(ss, sup_form(star7(star7(a, g), g) - a, pts));
    }
    const auto t23 = tau2_tau3(g);
    const auto fp = tau01_first_principles(g), cf = tau01_closed(g);
    t.rows[i] = {dd,
                 ss,
                 sup_form(d(phi, s) - dphi_closed(g), pts),
                 sup_form(d(psi, s) - dpsi_closed(g), pts),
                 sup_form(t23.tau2, pts),
                 sup_diff(fp.tau0, cf.tau0, pts),
                 sup_diff(fp.tau1, cf.tau1, pts)};
  });
  SuiteReport rep{"identities", seed, profiles, points, {}};
  t.reduce_into(rep, scale);
  return rep;
}

SuiteReport laplacian_suite(std::uint64_t seed, int profiles, int points, int threads, double scale) {
  std::mt19937_64 rng(seed);
  std::vector<G2Profile> gs;
  for (int i = 0; i < profiles; ++i)
    gs.push_back(random_coclosed_profile(rng, i % 2 ? StructureKind::NK : StructureKind::CY));
  const auto pts = grid(-1.0, 1.0, points);

  Table t{{"coclosed_constraint", "laplacian_closed_form"}, {1e-12, 1e-8}, std::vector<std::vector<double>>(profiles)};
  parallel_for(profiles, threads, [&](int i) {
    const auto& g = gs[i];
    t.rows[i] = {coclosed_defect(g), sup_form(hodge_laplacian_psi(g) - hodge_laplacian_psi_closed(g), pts)};
  });
  SuiteReport rep{"laplacian", seed, profiles, points, {}};
  t.reduce_into(rep, scale);
  return rep;
}

SuiteReport soliton_suite(int samples, int threads, double scale) {
  struct Case {
    std::string name;
    SolitonCandidate c;
  };
  SpecialParams cone, anti, cyl;
  cone.lambda = 2.0;
  anti.b = 1.0;
  anti.lambda = -3.0;
  cyl.b = 1.5;
  cyl.c = 0.4;
  const std::vector<Case> cases = {
      {"Cone", nk_special(Family::Cone, cone)},
      {"AntiCone", nk_special(Family::AntiCone, anti)},
      {"Cylinder", nk_special(Family::Cylinder, cyl)},
      {"SineCone", nk_special(Family::SineCone)},
      {"CYClosedForm", cy_closed_form(1.0, 1.0)},
  };
  const int n = static_cast<int>(cases.size());
  std::vector<std::vector<IdentityResult>> out(n);
  parallel_for(n, threads, [&](int i) {
    const auto& [name, c] = cases[i];
    const auto sys = c.structure == StructureKind::CY ? residuals_cy(c, samples) : residuals_nk(c, samples);
    out[i].push_back({name + ".system", sys.worst(), kResidualTol * scale});
    out[i].push_back({name + ".form", form_residual(c, samples).worst(), kResidualTol * scale});
  });
  SuiteReport rep{"solitons", 0, n, samples, {}};
  for (auto& v : out) rep.identities.insert(rep.identities.end(), v.begin(), v.end());

  const auto sc = nk_special(Family::SineCone);
  const auto eig = eigenform_check(sc.g2());
  rep.identities.push_back({"SineCone.eigenvalue_16", std::abs(eig.mu2 - 16.0), 1e-8 * scale});
  rep.identities.push_back({"SineCone.compact_identity", std::abs(compact_identity_check(sc).ratio() - 1.0), 1e-6 * scale});
  return rep;
}

SuiteReport run_suite(const std::string& suite, std::uint64_t seed, int profiles, int points, int threads,
                      double scale) {
  if (suite == "identities") return identity_suite(seed, profiles, points, threads, scale);
  if (suite == "laplacian") return laplacian_suite(seed, profiles, points, threads, scale);
  if (suite == "solitons") return soliton_suite(200, threads, scale);
  if (suite != "all") throw ConfigError("unknown suite '" + suite + "'");
  SuiteReport rep = identity_suite(seed, profiles, points, threads, scale);
  rep.suite = "all";
  for (const auto& part : {laplacian_suite(seed, 10, points, threads, scale), soliton_suite(200, threads, scale)})
    for (const auto& i : part.identities) rep.identities.push_back({part.suite + "." + i.name, i.max_residual, i.tolerance});
  return rep;
}

}  // namespace g2::cli
