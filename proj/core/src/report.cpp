#include "ssns/report.hpp"

#include "ssns/sphere_calculus.hpp"
#include "ssns/version.hpp"

#include <fstream>
#include <stdexcept>

namespace ssns {

Json run_config_json(const RunConfig& cfg) {
  Json j;
  j["n"] = cfg.n;
  j["grid_points"] = cfg.grid_points;
  j["force_family"] = cfg.force_family;
  j["amplitude"] = cfg.amplitude;
  j["tol"] = cfg.tol;
  j["seed"] = cfg.seed;
  return j;
}

Json exponents_json(const Exponents& e) {
  Json j;
  j["n"] = e.n;
  j["theta"] = e.theta.str();
  j["theta_value"] = e.theta.value();
  j["q"] = e.q.str();
  j["q_value"] = e.q.value();
  j["theta_conjugate"] = e.theta_conjugate.str();
  j["q_conjugate"] = e.q_conjugate.str();
  j["in_estimate_range"] = e.in_estimate_range;
  return j;
}

Json ratio_json(const RatioEntry& r) {
  Json j;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["ratio"] = r.ratio;
  j["indeterminate"] = r.indeterminate;
  return j;
}

Json identity_report_json(const IdentityReport& rep) {
  Json j;
  j["energy_identity_gap"] = rep.energy_identity_gap;
  j["sobolev_identity_gap"] = rep.sobolev_identity_gap;
  j["radial_average_gap"] = rep.radial_average_gap;
  j["nsnorm2_max_residual"] = rep.nsnorm2_max_residual;
  j["headpde_max_residual"] = rep.headpde_max_residual;
  j["divergence_max"] = rep.divergence_max;
  j["x_norm"] = rep.x_norm;
  Json ratios;
  for (const auto& [name, entry] : rep.estimate_ratios) ratios[name] = ratio_json(entry);
  j["estimate_ratios"] = std::move(ratios);
  return j;
}

Json trace_json(const ContinuationTrace& trace) {
  Json j;
  j["success"] = trace.success;
  j["final_lambda"] = trace.final_lambda;
  j["message"] = trace.message;
  Json records = Json::array();
  for (const auto& rec : trace.records) {
    Json r;
    r["lambda"] = rec.lambda;
    r["newton_iters"] = rec.newton_iters;
    r["residual"] = rec.residual;
    r["x_norm"] = rec.x_norm;
    r["picard"] = rec.picard;
    records.push_back(std::move(r));
  }
  j["records"] = std::move(records);
  j["last_newton_residuals"] = trace.last_newton_residuals;
  return j;
}

Json norms_json(const AxisymField& u, const ScalarSphereField& p) {
  const Grid& g = *u.grid;
  const Eigen::ArrayXd x = g.x.array();
  const Eigen::ArrayXd pv = p.values.array();
  const Eigen::ArrayXd dp = (g.d1 * p.values).array();
  const Eigen::VectorXd grad_p =
      ((1.0 - x.square()) * dp.square() + 4.0 * pv.square()).sqrt().matrix();

  Json j;
  j["x_norm"] = x_norm(u);
  j["grad_u_l2"] = std::sqrt(grad_norm_squared(u));
  const double p_exp = (g.n - 1.0) / (g.n - 3.0);
  const double gp_exp = (g.n - 1.0) / (g.n - 2.0);
  j["p_lnorm_exponent"] = p_exp;
  j["p_lnorm"] = lp_norm(ScalarSphereField(u.grid, p.values.cwiseAbs()), p_exp);
  j["grad_p_lnorm_exponent"] = gp_exp;
  j["grad_p_lnorm"] = lp_norm(ScalarSphereField(u.grid, grad_p), gp_exp);
  return j;
}

Json solve_report(const RunConfig& cfg, const ForceSpec& f, const SelfsimSolution& sol,
                  const IdentityReport& identities, double seconds) {
  Json j;
  j["schema"] = "ssns.solve-report.v1";
  j["version"] = kVersion;
  j["grid_checksum"] = f.grid->checksum_hex();
  j["config"] = run_config_json(cfg);
  Json force;
  force["family"] = f.family;
  force["amplitude"] = f.amplitude;
  force["radial_nonneg"] = f.radial_nonneg;
  j["force"] = std::move(force);
  j["exponents"] = cfg.n >= 5 ? exponents_json(exponents(cfg.n)) : Json(nullptr);
  Json solution;
  solution["converged"] = sol.trace.success;
  solution["residual"] = sol.residual_norm;
  solution["final_lambda"] = sol.trace.final_lambda;
  j["solution"] = std::move(solution);
  j["norms"] = norms_json(sol.velocity, sol.pressure);
  j["identities"] = identity_report_json(identities);
  j["trace"] = trace_json(sol.trace);
  Json timing;
  timing["seconds"] = seconds;
  j["timing"] = std::move(timing);
  return j;
}

Json strip_volatile(const Json& report) {
  if (report.is_object()) {
    Json out = Json::object();
    for (const auto& [key, value] : report.items()) {
      if (key == "timing") continue;
      out[key] = strip_volatile(value);
    }
    return out;
  }
  if (report.is_array()) {
    Json out = Json::array();
    for (const auto& value : report) out.push_back(strip_volatile(value));
    return out;
  }
  return report;
}

std::string to_stable_string(const Json& j) { return j.dump(2) + "\n"; }

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << to_stable_string(j);
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace ssns
