// Command-line front end: batch experiments on Toda flows driven by a single
// JSON config file. Subcommands: evolve, verify, mfunc, spectrum.
//
// Exit codes: 0 all checks pass, 1 a check failed or a run broke down,
// 2 usage or config error.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "toda/cocycle.hpp"
#include "toda/errors.hpp"
#include "toda/hierarchy.hpp"
#include "toda/io.hpp"
#include "toda/lattice.hpp"
#include "toda/weyl.hpp"

namespace fs = std::filesystem;
using toda::json;

namespace {

struct RunConfig {
  toda::JacobiWindow window;
  toda::HierarchyPolynomial poly;
  double t_final = 0.0;
  double dt = toda::kDefaultDt;
  long site = 0;
  std::vector<toda::cplx> z_grid;
  std::vector<std::string> checks;
  std::string out_dir = "out";
  std::uint64_t seed = 1;
  bool require_norm_class = false;
  bool negative_control = false;
  json echo;  // effective config, for the manifest
};

double require_number(const json& j, const std::string& field) {
  if (!j.contains(field))
    throw toda::config_error("config: missing field \"" + field + "\"");
  if (!j.at(field).is_number())
    throw toda::config_error("config: field \"" + field + "\" must be a number");
  return j.at(field).get<double>();
}

toda::JacobiWindow load_operator(const json& op, const fs::path& config_dir,
                                 std::uint64_t seed) {
  if (!op.is_object()) throw toda::config_error("config: \"operator\" must be an object");
  if (op.contains("file")) {
    const fs::path p = config_dir / op.at("file").get<std::string>();
    std::ifstream in(p);
    if (!in) throw toda::config_error("operator: cannot open file " + p.string());
    json j;
    in >> j;
    return toda::window_from_json(j);
  }
  if (op.contains("random")) {
    const json& r = op.at("random");
    const int sites = static_cast<int>(require_number(r, "sites"));
    const std::string bd = r.value("boundary", std::string("periodic"));
    const std::uint64_t s =
        r.contains("seed") ? r.at("seed").get<std::uint64_t>() : seed;
    return toda::random_window(
        sites, bd == "periodic" ? toda::Boundary::Periodic : toda::Boundary::EventuallyFree,
        s);
  }
  if (op.contains("free")) {
    const json& r = op.at("free");
    const int sites = static_cast<int>(require_number(r, "sites"));
    const std::string bd = r.value("boundary", std::string("eventually_free"));
    return toda::free_window(
        sites, bd == "periodic" ? toda::Boundary::Periodic : toda::Boundary::EventuallyFree);
  }
  return toda::window_from_json(op);
}

std::vector<toda::cplx> load_z_grid(const json& cfg) {
  if (!cfg.contains("z_grid")) return toda::default_z_grid();
  const json& g = cfg.at("z_grid");
  std::vector<toda::cplx> zs;
  if (g.contains("points")) {
    for (const auto& p : g.at("points")) {
      if (!p.is_array() || p.size() != 2)
        throw toda::config_error("z_grid.points: each point must be [re, im]");
      zs.emplace_back(p[0].get<double>(), p[1].get<double>());
    }
  } else if (g.contains("semicircle")) {
    const json& s = g.at("semicircle");
    const double radius = require_number(s, "radius");
    const int count = static_cast<int>(require_number(s, "count"));
    const double pi = 3.14159265358979323846;
    for (int k = 0; k < count; ++k) {
      const double theta = pi * (k + 0.5) / count;
      zs.emplace_back(radius * std::cos(theta), radius * std::sin(theta));
    }
  } else {
    throw toda::config_error("z_grid: expected \"points\" or \"semicircle\"");
  }
  for (const auto& z : zs) {
    if (!(z.imag() > 0.0))
      throw toda::config_error("z_grid: all points need Im z > 0");
  }
  if (zs.empty()) throw toda::config_error("z_grid: empty");
  return zs;
}

RunConfig load_config(const std::string& path, std::optional<double> dt_override,
                      std::optional<double> t_override,
                      std::optional<std::uint64_t> seed_override,
                      std::optional<std::string> out_override) {
  std::ifstream in(path);
  if (!in) throw toda::config_error("cannot open config file " + path);
  json cfg;
  try {
    in >> cfg;
  } catch (const json::exception& e) {
    throw toda::config_error(std::string("config parse error: ") + e.what());
  }

  if (seed_override) cfg["seed"] = *seed_override;
  if (dt_override) cfg["dt"] = *dt_override;
  if (t_override) cfg["t_final"] = *t_override;
  if (out_override) cfg["out_dir"] = *out_override;

  const std::uint64_t seed = cfg.value("seed", std::uint64_t{1});

  if (!cfg.contains("operator"))
    throw toda::config_error("config: missing field \"operator\"");
  toda::JacobiWindow window =
      load_operator(cfg.at("operator"), fs::path(path).parent_path(), seed);

  if (!cfg.contains("polynomial"))
    throw toda::config_error("config: missing field \"polynomial\"");
  std::vector<double> p;
  try {
    p = cfg.at("polynomial").get<std::vector<double>>();
  } catch (const json::exception&) {
    throw toda::config_error("config: \"polynomial\" must be an array of numbers");
  }

  RunConfig rc{
      std::move(window),
      toda::HierarchyPolynomial(std::move(p)),
      require_number(cfg, "t_final"),
      require_number(cfg, "dt"),
      static_cast<long>(cfg.value("site", 0)),
      load_z_grid(cfg),
      cfg.value("checks", std::vector<std::string>{}),
      cfg.value("out_dir", std::string("out")),
      seed,
      cfg.value("require_norm_class", false),
      cfg.value("negative_control", false),
      json{}};
  if (!(rc.dt > 0.0)) throw toda::config_error("config: \"dt\" must be positive");
  rc.echo = cfg;
  return rc;
}

void warn_norm_class(const RunConfig& rc) {
  if (!rc.require_norm_class) return;
  const double bound = toda::norm_bound(rc.window);
  if (bound > 2.0 + 1e-9)
    std::cerr << "warning: operator norm bound " << bound
              << " exceeds 2; the run leaves the norm class\n";
}

json norm_record(const RunConfig& rc) {
  const double bound = toda::norm_bound(rc.window);
  return json{{"bound", bound},
              {"requested", rc.require_norm_class},
              {"in_class", bound <= 2.0 + 1e-9}};
}

int cmd_evolve(const RunConfig& rc) {
  fs::create_directories(rc.out_dir);
  warn_norm_class(rc);

  std::vector<std::vector<double>> drift_rows;
  const bool periodic = rc.window.boundary == toda::Boundary::Periodic;
  std::vector<double> base;
  if (periodic) base = toda::spectrum(rc.window).eigenvalues;

  // Integrate step by step so the drift can be tabulated per step.
  toda::FlowState state{rc.window, 0.0, rc.dt, 0};
  const long steps =
      rc.t_final == 0.0
          ? 0
          : std::max<long>(1, std::llround(std::abs(rc.t_final) / rc.dt));
  const double h = steps == 0 ? rc.dt : rc.t_final / static_cast<double>(steps);
  toda::JacobiWindow J = rc.window;
  for (long k = 0; k < steps; ++k) {
    J = toda::evolve(J, rc.poly, h, std::abs(h)).J;
    if (periodic) {
      const auto eig = toda::spectrum(J).eigenvalues;
      double drift = 0.0;
      for (size_t i = 0; i < eig.size(); ++i)
        drift = std::max(drift, std::abs(eig[i] - base[i]));
      drift_rows.push_back({static_cast<double>(k + 1),
                            static_cast<double>(k + 1) * h, drift});
    }
  }
  state = toda::FlowState{J, rc.t_final, h, steps};

  std::ofstream out(fs::path(rc.out_dir) / "flow_state.json");
  out << toda::to_json(state).dump(2) << '\n';
  if (periodic) {
    toda::write_csv((fs::path(rc.out_dir) / "drift.csv").string(),
                    {"step", "t", "drift"}, drift_rows);
  } else {
    std::cerr << "note: spectrum drift is only tabulated for periodic windows\n";
  }
  std::cout << "evolved to t = " << rc.t_final << " in " << steps << " steps\n";
  return 0;
}

toda::CheckRecord run_check(const std::string& name, const RunConfig& rc) {
  using namespace toda;
  const JacobiWindow& J = rc.window;
  const HierarchyPolynomial& poly = rc.poly;
  const long N = J.sites();
  CheckRecord rec;
  rec.check_name = name;
  rec.parameters = json{{"d", poly.degree()}, {"t", rc.t_final}, {"dt", rc.dt}};

  if (name == "spectrum") {
    if (J.boundary != Boundary::Periodic)
      throw config_error("check \"spectrum\" requires a periodic operator");
    const auto base = spectrum(J).eigenvalues;
    const auto evolved = spectrum(evolve(J, poly, rc.t_final, rc.dt).J).eigenvalues;
    double drift = 0.0;
    for (size_t i = 0; i < base.size(); ++i)
      drift = std::max(drift, std::abs(evolved[i] - base[i]));
    rec.residual = drift;
    rec.tolerance = 1e-8;
  } else if (name == "master") {
    double r = 0.0;
    for (long n = 0; n < N; ++n) {
      const auto m = check_master_equations(J, n, poly);
      r = std::max({r, m[0], m[1], m[2]});
    }
    rec.residual = r;
    rec.tolerance = kTolExactIdentity;
  } else if (name == "pq") {
    double r = 0.0;
    std::vector<std::vector<double>> ps;
    for (long n = 0; n < N; ++n) {
      const PolyMatrix2 B = build_B(J, n, poly);
      const HierarchyPolynomial p = recover_p(B.a12, J, n);
      const std::vector<double> q = compute_q(B, J, n);
      for (size_t j = 0; j < q.size(); ++j)
        r = std::max(r, std::abs(p.p[j] - q[j]));
      ps.push_back(p.p);
    }
    for (size_t j = 0; j < ps.front().size(); ++j)
      for (size_t n = 1; n < ps.size(); ++n)
        r = std::max(r, std::abs(ps[n][j] - ps[0][j]));
    rec.residual = r;
    rec.tolerance = kTolExactIdentity;
  } else if (name == "vanishing") {
    double r = 0.0;
    for (long n = 0; n < N; ++n)
      r = std::max(r, check_vanishing_identity(J, n, poly));
    rec.residual = r;
    rec.tolerance = kTolExactIdentity;
  } else if (name == "curvature") {
    double r = 0.0;
    for (const cplx& z : rc.z_grid)
      r = std::max(r, check_zero_curvature(J, rc.site, poly, z, 1e-4));
    rec.residual = r;
    rec.tolerance = kTolOneIntegration;
    rec.parameters["fd_dt"] = 1e-4;
  } else if (name == "cocycle") {
    double r = 0.0, drift = 0.0;
    for (const cplx& z : rc.z_grid) {
      const CocycleCheck c =
          check_cocycle_law(J, poly, z, rc.t_final / 2.0, rc.t_final / 2.0, rc.dt, rc.site);
      r = std::max(r, c.residual);
      drift = std::max(drift, c.det_drift);
    }
    rec.residual = r;
    rec.tolerance = kTolOneIntegration;
    rec.parameters["det_drift"] = drift;
  } else if (name == "shiftcomm") {
    if (J.boundary != Boundary::Periodic)
      throw config_error("check \"shiftcomm\" requires a periodic operator");
    double r = 0.0;
    for (const cplx& z : rc.z_grid)
      r = std::max(r, check_shift_commutation(J, poly, z, rc.t_final, rc.dt, rc.site));
    rec.residual = r;
    rec.tolerance = kTolTwoIntegrations;
  } else if (name == "equivalence") {
    EquivalenceReport rep;
    if (rc.negative_control) {
      std::vector<double> rev(poly.p.rbegin(), poly.p.rend());
      rep = check_flow_equivalence(J, poly, HierarchyPolynomial(std::move(rev)),
                                   rc.t_final, rc.dt, rc.z_grid);
      rec.parameters["negative_control"] = true;
    } else {
      rep = check_flow_equivalence(J, poly, rc.t_final, rc.dt, rc.z_grid);
    }
    rec.residual = rep.overall;
    rec.tolerance = kTolTwoIntegrations;
    rec.parameters["master"] = rep.master;
    rec.parameters["curvature"] = rep.curvature;
    rec.parameters["cocycle"] = rep.cocycle;
  } else if (name == "mfunc") {
    if (J.boundary != Boundary::EventuallyFree)
      throw config_error("check \"mfunc\" requires an eventually-free operator");
    double r = 0.0, tail = 0.0;
    bool herglotz = true;
    for (const cplx& z : rc.z_grid) {
      const MEvolutionReport m =
          check_m_evolution(J, poly, rc.t_final, HalfPlanePoint(z), rc.dt, rc.site);
      r = std::max({r, m.res_minus, m.res_plus});
      tail = std::max(tail, m.tail_deviation);
      herglotz = herglotz && m.herglotz_ok;
      if (m.tail_warning)
        std::cerr << "warning: evolved tails deviate from free by " << m.tail_deviation
                  << "\n";
    }
    rec.residual = r;
    rec.tolerance = kTolMEvolution;
    rec.parameters["tail_deviation"] = tail;
    rec.parameters["herglotz_ok"] = herglotz;
    if (!herglotz) rec.residual = std::numeric_limits<double>::infinity();
  } else {
    throw config_error("unknown check \"" + name + "\"");
  }

  rec.pass = rec.residual < rec.tolerance;
  return rec;
}

int cmd_verify(const RunConfig& rc) {
  fs::create_directories(rc.out_dir);
  warn_norm_class(rc);

  json checks = json::array();
  bool all_pass = true;
  for (const std::string& name : rc.checks) {
    const toda::CheckRecord rec = run_check(name, rc);
    checks.push_back(toda::to_json(rec));
    all_pass = all_pass && rec.pass;
    std::cout << (rec.pass ? "PASS " : "FAIL ") << rec.check_name
              << "  residual=" << toda::format_float17(rec.residual)
              << "  tolerance=" << toda::format_float17(rec.tolerance) << "\n";
  }

  const json manifest{{"all_pass", all_pass},
                      {"checks", checks},
                      {"config", rc.echo},
                      {"norm", norm_record(rc)}};
  std::ofstream out(fs::path(rc.out_dir) / "manifest.json");
  out << manifest.dump(2) << '\n';
  return all_pass ? 0 : 1;
}

int cmd_mfunc(const RunConfig& rc) {
  if (rc.window.boundary != toda::Boundary::EventuallyFree)
    throw toda::config_error("mfunc requires an eventually-free operator");
  fs::create_directories(rc.out_dir);
  warn_norm_class(rc);

  std::vector<std::vector<double>> plus_rows, minus_rows;
  auto sweep = [&](const toda::JacobiWindow& J, double t) {
    for (const toda::cplx& z : rc.z_grid) {
      const toda::MPair m = toda::m_functions(J, rc.site, toda::HalfPlanePoint(z));
      plus_rows.push_back({z.real(), z.imag(), m.m_plus.real(), m.m_plus.imag(), t});
      minus_rows.push_back({z.real(), z.imag(), m.m_minus.real(), m.m_minus.imag(), t});
    }
  };
  sweep(rc.window, 0.0);
  if (rc.t_final != 0.0)
    sweep(toda::evolve(rc.window, rc.poly, rc.t_final, rc.dt).J, rc.t_final);

  const std::vector<std::string> header{"re_z", "im_z", "re_m", "im_m", "t"};
  toda::write_csv((fs::path(rc.out_dir) / "m_plus.csv").string(), header, plus_rows);
  toda::write_csv((fs::path(rc.out_dir) / "m_minus.csv").string(), header, minus_rows);
  std::cout << "wrote " << plus_rows.size() << " rows per m-function\n";
  return 0;
}

int cmd_spectrum(const RunConfig& rc) {
  if (rc.window.boundary != toda::Boundary::Periodic)
    throw toda::config_error("spectrum requires a periodic operator");
  fs::create_directories(rc.out_dir);
  warn_norm_class(rc);

  const toda::SpectrumReport rep = toda::spectrum(rc.window);
  std::vector<std::vector<double>> rows;
  for (size_t i = 0; i < rep.eigenvalues.size(); ++i)
    rows.push_back({static_cast<double>(i), rep.eigenvalues[i]});
  toda::write_csv((fs::path(rc.out_dir) / "spectrum.csv").string(),
                  {"index", "eigenvalue"}, rows);
  std::cout << "residual = " << toda::format_float17(rep.residual) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Toda hierarchy laboratory: Lax flows, cocycles, m-functions"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<double> dt_override, t_override;
  std::optional<std::uint64_t> seed_override;
  std::optional<std::string> out_override;

  for (const char* name : {"evolve", "verify", "mfunc", "spectrum"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "config file (JSON)")->required();
    sub->add_option("--out", [&](const CLI::results_t& r) {
      out_override = r[0];
      return true;
    }, "output directory (overrides config)");
    sub->add_option("--dt", [&](const CLI::results_t& r) {
      dt_override = std::stod(r[0]);
      return true;
    }, "integrator step (overrides config)");
    sub->add_option("--t", [&](const CLI::results_t& r) {
      t_override = std::stod(r[0]);
      return true;
    }, "flow time (overrides config)");
    sub->add_option("--seed", [&](const CLI::results_t& r) {
      seed_override = std::stoull(r[0]);
      return true;
    }, "random seed (overrides config)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const RunConfig rc =
        load_config(config_path, dt_override, t_override, seed_override, out_override);
    if (app.got_subcommand("evolve")) return cmd_evolve(rc);
    if (app.got_subcommand("verify")) return cmd_verify(rc);
    if (app.got_subcommand("mfunc")) return cmd_mfunc(rc);
    if (app.got_subcommand("spectrum")) return cmd_spectrum(rc);
    return 2;
  } catch (const toda::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const toda::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
