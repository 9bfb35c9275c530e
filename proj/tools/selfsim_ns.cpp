// Command-line front end.
//
// Subcommands: solve | validate | toy | sweep | exponents | abeta.
// Reports are JSON with a stable key order; curve outputs are CSV with fixed
// columns.  A JSON config file (--config) supplies defaults; explicit flags
// win.  Exit codes: 0 success, 1 usage/config error, 2 solver stall,
// 3 validation failure.  SELFSIM_NS_LOG controls log verbosity.

#include "ssns/abeta_weight.hpp"
#include "ssns/force_library.hpp"
#include "ssns/report.hpp"
#include "ssns/solver.hpp"
#include "ssns/sphere_calculus.hpp"
#include "ssns/toy_model.hpp"
#include "ssns/validators.hpp"
#include "ssns/version.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitStall = 2;
constexpr int kExitValidation = 3;

ssns::Json load_config_json(int argc, char** argv) {
  std::string path;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--config" && i + 1 < argc) path = argv[i + 1];
    else if (arg.rfind("--config=", 0) == 0) path = arg.substr(9);
  }
  if (path.empty()) return ssns::Json(nullptr);
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file: " + path);
  ssns::Json j = ssns::Json::parse(in);
  if (!j.is_object()) throw std::runtime_error("config file must hold a JSON object");
  return j;
}

template <class T>
void config_default(const ssns::Json& cfg, const char* key, T& var) {
  if (cfg.is_object() && cfg.contains(key)) var = cfg.at(key).template get<T>();
}

// shortest round-trip decimal form, shared with the JSON reports
std::string fmt(double v) { return ssns::Json(v).dump(); }

void emit_text(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + out_path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + out_path);
}

std::vector<double> parse_double_list(const std::string& spec) {
  std::vector<double> vals;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) vals.push_back(std::stod(item));
  }
  if (vals.empty()) throw std::runtime_error("empty list: " + spec);
  return vals;
}

struct SweepRange {
  double lo = 0.0, hi = 0.0, step = 0.0;
};

SweepRange parse_sweep(const std::string& spec) {
  SweepRange r;
  char c1 = 0, c2 = 0;
  std::stringstream ss(spec);
  if (!(ss >> r.lo >> c1 >> r.hi >> c2 >> r.step) || c1 != ':' || c2 != ':' || r.step <= 0.0 ||
      r.hi <= r.lo)
    throw std::runtime_error("expected lo:hi:step with step > 0, got: " + spec);
  return r;
}

// scale against which identity gaps count as relative: fields are O(x_norm),
// quadratic terms O(x_norm^2), and the force enters linearly
double identity_scale(const ssns::IdentityReport& rep, const ssns::ForceSpec& f) {
  const double fs = f.f_r.lpNorm<Eigen::Infinity>() + f.f_theta.lpNorm<Eigen::Infinity>();
  return 1.0 + rep.x_norm + rep.x_norm * rep.x_norm + fs;
}

struct SolveOpts {
  int n = 5;
  int grid = 64;
  std::string force = "radial-cosine";
  double amplitude = 1e-2;
  int lambda_steps = 4;
  double tol = 1e-11;
  std::uint64_t seed = 0x5eed;
  std::string out;
  double check_tol = 1e-6;  // validate gate on relative identity gaps
};

int run_solve(const SolveOpts& o, bool validate_mode) {
  const auto t0 = std::chrono::steady_clock::now();
  ssns::GridPtr grid = ssns::build_grid(o.n, o.grid);
  ssns::ForceSpec f = ssns::make_force(o.force, o.amplitude, grid);
  ssns::StokesSystem sys(grid);

  ssns::SolverConfig scfg;
  scfg.newton_tol = o.tol;
  scfg.initial_step = 1.0 / std::max(1, o.lambda_steps);
  ssns::SelfsimSolution sol = ssns::solve_selfsimilar(sys, f, scfg);

  const double lambda_reached = sol.trace.success ? 1.0 : sol.trace.final_lambda;
  ssns::IdentityReport rep =
      ssns::estimate_report(sol.velocity, sol.pressure, f, lambda_reached);

  ssns::RunConfig rc;
  rc.n = o.n;
  rc.grid_points = o.grid;
  rc.force_family = o.force;
  rc.amplitude = o.amplitude;
  rc.tol = o.tol;
  rc.seed = o.seed;
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  ssns::Json report = ssns::solve_report(rc, f, sol, rep, secs);

  int code = sol.trace.success ? kExitOk : kExitStall;
  if (validate_mode && code == kExitOk) {
    const double scale = identity_scale(rep, f);
    const double worst = std::max({rep.energy_identity_gap, rep.sobolev_identity_gap,
                                   rep.radial_average_gap, rep.nsnorm2_max_residual,
                                   rep.headpde_max_residual, rep.divergence_max}) /
                         scale;
    bool pass = worst <= o.check_tol && ssns::split_energy_bound_holds(rep);
    double ambient_dev = -1.0;
    std::string ambient_error;
    try {
      ssns::AmbientCheckOptions ao;
      ao.seed = o.seed;
      ambient_dev = ssns::ambient_consistency_check(sol.velocity, sol.pressure, ao);
    } catch (const std::exception& e) {
      pass = false;
      ambient_error = e.what();
    }
    ssns::Json v;
    v["pass"] = pass;
    v["worst_relative_gap"] = worst;
    v["gap_tolerance"] = o.check_tol;
    v["split_energy_bound_holds"] = ssns::split_energy_bound_holds(rep);
    v["ambient_fd_max_deviation"] = ambient_dev;
    if (!ambient_error.empty()) v["ambient_fd_error"] = ambient_error;
    report["validation"] = std::move(v);
    if (!pass) code = kExitValidation;
  }

  emit_text(o.out, ssns::to_stable_string(report));
  if (code == kExitStall)
    std::cerr << "solver stall: " << sol.trace.message << " (report written)\n";
  return code;
}

int run_toy(const std::string& sweep_spec, const std::string& out_path) {
  const SweepRange r = parse_sweep(sweep_spec);
  const int steps = std::max(16, static_cast<int>(std::lround(2.0 * (r.hi - r.lo) / r.step)));
  ssns::ToyDiagram d = ssns::fold_continuation(r.lo, r.lo, steps);

  std::string csv = "c,C,branch,fold\n";
  for (const auto& pt : d.points) {
    csv += fmt(pt.c) + "," + fmt(pt.C) + "," + std::to_string(pt.branch_id) + ",0\n";
    if (pt.fold && d.fold_found)
      csv += fmt(d.fold_c) + "," + fmt(d.fold_C) + "," + std::to_string(pt.branch_id) + ",1\n";
  }
  emit_text(out_path, csv);
  if (d.stalled) {
    std::cerr << "toy continuation stalled: " << d.message << "\n";
    return kExitStall;
  }
  return kExitOk;
}

int run_sweep(const SolveOpts& o, const std::string& amplitudes, int jobs) {
  ssns::GridPtr grid = ssns::build_grid(o.n, o.grid);
  ssns::ForceSpec shape = ssns::make_force(o.force, 1.0, grid);
  ssns::StokesSystem sys(grid);
  ssns::SolverConfig scfg;
  scfg.newton_tol = o.tol;
  scfg.initial_step = 1.0 / std::max(1, o.lambda_steps);

  const std::vector<double> amps = parse_double_list(amplitudes);
  const auto rows = ssns::amplitude_sweep(sys, shape, amps, scfg, jobs);

  std::string csv = "A,converged,x_norm,energy_gap,radial_gap\n";
  for (const auto& row : rows) {
    csv += fmt(row.amplitude) + "," + (row.converged ? "1" : "0") + "," + fmt(row.x_norm) + "," +
           fmt(row.energy_gap) + "," + fmt(row.radial_gap) + "\n";
  }
  emit_text(o.out, csv);
  return kExitOk;  // non-converged amplitudes are data, not a tool failure
}

int run_exponents(int n, const std::string& out_path) {
  ssns::Json j;
  j["schema"] = "ssns.exponents.v1";
  j["version"] = ssns::kVersion;
  j["exponents"] = ssns::exponents_json(ssns::exponents(n));
  emit_text(out_path, ssns::to_stable_string(j));
  return kExitOk;
}

int run_abeta(int n, double beta, double cap, const std::string& out_path) {
  ssns::WeightConfig cfg;
  cfg.n = n;
  cfg.beta = beta;
  ssns::ScanResult scan;
  try {
    scan = ssns::abeta_scan(cfg, ssns::default_ball_samples(), cap);
  } catch (const std::exception& e) {
    std::cerr << "weight scan violated an asserted bound: " << e.what() << "\n";
    return kExitValidation;
  }
  std::string csv = "center_norm,radius,product\n";
  for (const auto& row : scan.table)
    csv += fmt(row.center_norm) + "," + fmt(row.radius) + "," + fmt(row.product) + "\n";
  emit_text(out_path, csv);
  std::cerr << "sup product " << scan.sup_product << " over " << scan.table.size() << " balls, "
            << scan.flagged << " above cap " << scan.cap << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  ssns::Json cfg;
  try {
    cfg = load_config_json(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  CLI::App app{"self-similar steady Navier-Stokes profiles on the sphere"};
  app.set_version_flag("--version", std::string(ssns::kVersion));
  app.require_subcommand(1);

  SolveOpts so;
  config_default(cfg, "n", so.n);
  config_default(cfg, "grid", so.grid);
  config_default(cfg, "force", so.force);
  config_default(cfg, "A", so.amplitude);
  config_default(cfg, "lambda_steps", so.lambda_steps);
  config_default(cfg, "tol", so.tol);
  config_default(cfg, "seed", so.seed);
  config_default(cfg, "out", so.out);
  config_default(cfg, "check_tol", so.check_tol);

  std::string sweep_spec = "0:1.5:0.01";
  std::string amplitudes = "0.01,0.02,0.05,0.1";
  int jobs = 1;
  double beta = 2.0;
  double cap = 1e6;
  std::string config_path;  // consumed by the preload scan
  config_default(cfg, "sweep", sweep_spec);
  config_default(cfg, "amplitudes", amplitudes);
  config_default(cfg, "jobs", jobs);
  config_default(cfg, "beta", beta);
  config_default(cfg, "cap", cap);

  auto add_common = [&](CLI::App* sub, bool with_force) {
    sub->add_option("--n", so.n, "ambient dimension")->capture_default_str();
    sub->add_option("--grid", so.grid, "collocation nodes")->capture_default_str();
    if (with_force) {
      sub->add_option("--force", so.force, "force family name")->capture_default_str();
      sub->add_option("--A", so.amplitude, "force amplitude")->capture_default_str();
      sub->add_option("--lambda-steps", so.lambda_steps, "initial homotopy increments")
          ->capture_default_str();
      sub->add_option("--tol", so.tol, "Newton residual tolerance")->capture_default_str();
      sub->add_option("--seed", so.seed, "seed for randomized checks")->capture_default_str();
    }
    sub->add_option("--out", so.out, "output path (default: stdout)");
    sub->add_option("--config", config_path, "JSON config file (flags win)");
  };

  CLI::App* solve = app.add_subcommand("solve", "homotopy solve, JSON report");
  add_common(solve, true);
  CLI::App* validate =
      app.add_subcommand("validate", "solve, then gate the identity suite (exit 3 on failure)");
  add_common(validate, true);
  validate->add_option("--check-tol", so.check_tol, "relative identity-gap gate")
      ->capture_default_str();

  CLI::App* toy = app.add_subcommand("toy", "trace the model fold diagram, CSV (c,C,branch,fold)");
  toy->add_option("--sweep", sweep_spec, "c range as lo:hi:step")->capture_default_str();
  toy->add_option("--out", so.out, "output path (default: stdout)");
  toy->add_option("--config", config_path, "JSON config file (flags win)");

  CLI::App* sweep =
      app.add_subcommand("sweep", "amplitude sweep, CSV (A,converged,x_norm,energy_gap,radial_gap)");
  add_common(sweep, true);
  sweep->add_option("--amplitudes", amplitudes, "comma-separated amplitude list")
      ->capture_default_str();
  sweep->add_option("--jobs", jobs, "parallel cold-start solves")->capture_default_str();

  CLI::App* expo = app.add_subcommand("exponents", "exact integrability exponents, JSON");
  expo->add_option("--n", so.n, "ambient dimension (>= 5)")->capture_default_str();
  expo->add_option("--out", so.out, "output path (default: stdout)");
  expo->add_option("--config", config_path, "JSON config file (flags win)");

  CLI::App* abeta =
      app.add_subcommand("abeta", "weight product scan, CSV (center_norm,radius,product)");
  abeta->add_option("--n", so.n, "ambient dimension")->capture_default_str();
  abeta->add_option("--beta", beta, "weight exponent beta > 1")->capture_default_str();
  abeta->add_option("--cap", cap, "flag products above this value")->capture_default_str();
  abeta->add_option("--out", so.out, "output path (default: stdout)");
  abeta->add_option("--config", config_path, "JSON config file (flags win)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (solve->parsed()) return run_solve(so, false);
    if (validate->parsed()) return run_solve(so, true);
    if (toy->parsed()) return run_toy(sweep_spec, so.out);
    if (sweep->parsed()) return run_sweep(so, amplitudes, jobs);
    if (expo->parsed()) return run_exponents(so.n, so.out);
    if (abeta->parsed()) return run_abeta(so.n, beta, cap, so.out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
