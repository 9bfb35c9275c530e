#include "ssns/solver.hpp"

#include "ssns/log.hpp"
#include "ssns/sphere_calculus.hpp"
#include "ssns/validators.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>

namespace ssns {

namespace {

// Advection forcing stacked as [N_axis; x.*N_axis + N_beta; 0], closed form.
Eigen::VectorXd advection_stack(const Grid& g, const Eigen::VectorXd& z) {
  const int m = g.size;
  const Eigen::ArrayXd x = g.x.array();
  const Eigen::ArrayXd s2 = 1.0 - x.square();
  const Eigen::ArrayXd a = z.segment(0, m).array();
  const Eigen::ArrayXd b = z.segment(m, m).array();
  const Eigen::ArrayXd da = (g.d1 * z.segment(0, m)).array();
  const Eigen::ArrayXd db = (g.d1 * z.segment(m, m)).array();
  const Eigen::ArrayXd n_axis = s2 * a * da - x * a.square();
  const Eigen::ArrayXd n_beta = s2 * a * db - b.square() - 2.0 * x * a * b;
  Eigen::VectorXd out = Eigen::VectorXd::Zero(3 * m);
  out.segment(0, m) = n_axis.matrix();
  out.segment(m, m) = (x * n_axis + n_beta).matrix();
  return out;
}

// Exact Jacobian of advection_stack with respect to [A; B] (pressure columns zero).
Eigen::MatrixXd advection_jacobian(const Grid& g, const Eigen::VectorXd& z) {
  const int m = g.size;
  const Eigen::ArrayXd x = g.x.array();
  const Eigen::ArrayXd s2 = 1.0 - x.square();
  const Eigen::VectorXd a = z.segment(0, m);
  const Eigen::VectorXd b = z.segment(m, m);
  const Eigen::ArrayXd da = (g.d1 * a).array();
  const Eigen::ArrayXd db = (g.d1 * b).array();

  const Eigen::MatrixXd dna_da = Eigen::MatrixXd((s2 * da - 2.0 * x * a.array()).matrix().asDiagonal()) +
                                 (s2 * a.array()).matrix().asDiagonal() * g.d1;
  const Eigen::MatrixXd dnb_da = ((s2 * db - 2.0 * x * b.array()).matrix()).asDiagonal();
  const Eigen::MatrixXd dnb_db = Eigen::MatrixXd((-2.0 * (b.array() + x * a.array())).matrix().asDiagonal()) +
                                 (s2 * a.array()).matrix().asDiagonal() * g.d1;

  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(3 * m, 3 * m);
  j.block(0, 0, m, m) = dna_da;
  j.block(m, 0, m, m) = x.matrix().asDiagonal() * dna_da + dnb_da;
  j.block(m, m, m, m) = dnb_db;
  return j;
}

// Residuals are measured row-relative (each equation divided by its row norm
// in the assembled matrix) and then relative to the equally-scaled data; the
// raw rows grow like N^4 and faster for large n, so only the equilibrated
// metric admits one tolerance across dimensions.
double scaled_residual(const StokesSystem& sys, const Eigen::VectorXd& f, double scale) {
  return f.cwiseQuotient(sys.row_scales()).lpNorm<Eigen::Infinity>() / scale;
}

double rhs_scale(const StokesSystem& sys, const Eigen::VectorXd& b) {
  return std::max(1.0, b.cwiseQuotient(sys.row_scales()).lpNorm<Eigen::Infinity>());
}

struct NewtonOutcome {
  bool converged = false;
  int iters = 0;
  double residual = std::numeric_limits<double>::infinity();
  std::vector<double> history;
};

NewtonOutcome newton_at_lambda(const StokesSystem& sys, const Eigen::VectorXd& b, double scale,
                               Eigen::VectorXd& z, const SolverConfig& cfg) {
  const Grid& g = *sys.grid();
  const Eigen::VectorXd inv_rs = sys.row_scales().cwiseInverse();
  NewtonOutcome out;
  Eigen::VectorXd f = sys.matrix() * z + advection_stack(g, z) - b;
  double res = scaled_residual(sys, f, scale);
  out.history.push_back(res);
  for (int it = 0; it < cfg.max_newton; ++it) {
    if (res <= cfg.newton_tol) {
      out.converged = true;
      out.iters = it;
      out.residual = res;
      return out;
    }
    const Eigen::MatrixXd jac =
        inv_rs.asDiagonal() * (sys.matrix() + advection_jacobian(g, z));
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(jac);
    const Eigen::VectorXd dz = lu.solve(-f.cwiseProduct(inv_rs));
    if (!dz.allFinite()) break;

    // backtracking on the scaled residual
    double t = 1.0;
    Eigen::VectorXd z_new;
    Eigen::VectorXd f_new;
    double res_new = res;
    bool accepted = false;
    for (int ls = 0; ls < 6; ++ls) {
      z_new = z + t * dz;
      f_new = sys.matrix() * z_new + advection_stack(g, z_new) - b;
      res_new = scaled_residual(sys, f_new, scale);
      if (res_new < res * (1.0 - 0.25 * t) || res_new <= cfg.newton_tol) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;
    z = z_new;
    f = f_new;
    res = res_new;
    out.history.push_back(res);
  }
  out.converged = res <= cfg.newton_tol;
  out.iters = static_cast<int>(out.history.size()) - 1;
  out.residual = res;
  return out;
}

bool picard_at_lambda(const StokesSystem& sys, const Eigen::VectorXd& b, double scale,
                      Eigen::VectorXd& z, const SolverConfig& cfg, int* iters_out,
                      double* res_out) {
  const Grid& g = *sys.grid();
  double omega = 1.0;
  double res = scaled_residual(sys, sys.matrix() * z + advection_stack(g, z) - b, scale);
  for (int it = 0; it < cfg.max_picard; ++it) {
    if (res <= cfg.newton_tol) {
      *iters_out = it;
      *res_out = res;
      return true;
    }
    const Eigen::VectorXd z_next = sys.solve(b - advection_stack(g, z));
    const Eigen::VectorXd z_mix = (1.0 - omega) * z + omega * z_next;
    const double res_mix =
        scaled_residual(sys, sys.matrix() * z_mix + advection_stack(g, z_mix) - b, scale);
    if (res_mix > res && omega > 1.0 / 64.0) {
      omega *= 0.5;  // damp and retry from the same iterate
      continue;
    }
    z = z_mix;
    res = res_mix;
  }
  *iters_out = cfg.max_picard;
  *res_out = res;
  return res <= cfg.newton_tol;
}

SelfsimSolution finish_solution(const StokesSystem& sys, const Eigen::VectorXd& z,
                                ContinuationTrace trace) {
  auto [u, p] = sys.unpack(z);
  SelfsimSolution sol;
  sol.residual_norm = trace.records.empty() ? 0.0 : trace.records.back().residual;
  sol.trace = std::move(trace);
  sol.velocity = std::move(u);
  sol.pressure = std::move(p);
  return sol;
}

void warn_if_uncovered(const StokesSystem& sys, const ForceSpec& f) {
  if (sys.grid()->n > 16 && !f.radial_nonneg)
    log(LogLevel::warn, "solver", "n=", sys.grid()->n,
        " with a sign-indefinite or tangential force: outside the range with an existence "
        "guarantee; results are exploratory");
}

SelfsimSolution homotopy_solve(const StokesSystem& sys, const ForceSpec& f,
                               const SolverConfig& cfg, const Eigen::VectorXd* z_start) {
  if (f.grid != sys.grid()) throw std::invalid_argument("solve_selfsimilar: grid mismatch");
  if (!(cfg.newton_tol > 0.0) || !(cfg.min_step > 0.0))
    throw std::invalid_argument("solve_selfsimilar: tolerances must be positive");
  warn_if_uncovered(sys, f);

  const int m = sys.grid()->size;
  const Eigen::VectorXd b_full = sys.rhs(f, 1.0);
  const double scale = rhs_scale(sys, b_full);

  ContinuationTrace trace;

  // Optional warm start: Newton straight at lambda = 1.
  if (z_start != nullptr) {
    Eigen::VectorXd z = *z_start;
    NewtonOutcome nw = newton_at_lambda(sys, b_full, scale, z, cfg);
    if (nw.converged) {
      auto [u, p] = sys.unpack(z);
      trace.records.push_back({1.0, nw.iters, nw.residual, x_norm(u), false});
      trace.success = true;
      trace.final_lambda = 1.0;
      trace.message = "warm start converged at lambda=1";
      trace.last_newton_residuals = std::move(nw.history);
      return finish_solution(sys, z, std::move(trace));
    }
    log(LogLevel::info, "solver", "warm start failed (residual ", nw.residual,
        "), falling back to homotopy");
  }

  Eigen::VectorXd z = Eigen::VectorXd::Zero(3 * m);
  Eigen::VectorXd z_prev = z;
  double lambda = 0.0, lambda_prev = 0.0;
  double step = std::min(cfg.initial_step, 1.0);
  int attempts = 0;

  while (lambda < 1.0) {
    if (++attempts > cfg.max_steps) {
      trace.message = "continuation exceeded max_steps";
      break;
    }
    const double lambda_try = std::min(1.0, lambda + step);
    Eigen::VectorXd z_try = z;
    if (cfg.secant_predictor && lambda > lambda_prev)
      z_try += (z - z_prev) * ((lambda_try - lambda) / (lambda - lambda_prev));

    NewtonOutcome nw = newton_at_lambda(sys, sys.rhs(f, lambda_try), scale, z_try, cfg);
    bool picard_used = false;
    if (!nw.converged && cfg.picard_fallback && step * cfg.shrink < cfg.min_step) {
      // Newton stalled and the controller is out of room: last-resort Picard.
      z_try = z;
      int its = 0;
      double res = 0.0;
      if (picard_at_lambda(sys, sys.rhs(f, lambda_try), scale, z_try, cfg, &its, &res)) {
        nw.converged = true;
        nw.iters = its;
        nw.residual = res;
        nw.history.clear();
        picard_used = true;
      }
    }

    if (nw.converged) {
      z_prev = z;
      lambda_prev = lambda;
      z = z_try;
      lambda = lambda_try;
      auto [u, p] = sys.unpack(z);
      (void)p;
      trace.records.push_back({lambda, nw.iters, nw.residual, x_norm(u), picard_used});
      if (!nw.history.empty()) trace.last_newton_residuals = std::move(nw.history);
      log(LogLevel::debug, "solver", "lambda=", lambda, " iters=", nw.iters,
          " residual=", nw.residual);
      if (nw.iters <= 4 && !picard_used) step = std::min(step * cfg.grow, 1.0);
    } else {
      step *= cfg.shrink;
      log(LogLevel::debug, "solver", "step rejected at lambda=", lambda_try,
          " residual=", nw.residual, ", shrinking to ", step);
      if (step < cfg.min_step) {
        trace.message = "continuation stalled at lambda=" + std::to_string(lambda);
        break;
      }
    }
  }

  trace.final_lambda = lambda;
  trace.success =
      lambda >= 1.0 && !trace.records.empty() && trace.records.back().residual <= cfg.newton_tol;
  if (trace.success && trace.message.empty()) trace.message = "converged";
  if (!trace.success)
    log(LogLevel::warn, "solver", "continuation did not reach lambda=1: ", trace.message);
  return finish_solution(sys, z, std::move(trace));
}

}  // namespace

std::pair<AxisymField, ScalarSphereField> nonlinear_residual(const AxisymField& u,
                                                             const ScalarSphereField& p,
                                                             const ForceSpec& f, double lambda) {
  if (u.grid != p.grid || u.grid != f.grid)
    throw std::invalid_argument("nonlinear_residual: grid mismatch");
  const MomentumProfiles mom = momentum_profiles(u, p, /*include_advection=*/true);
  AxisymField momentum(u.grid, mom.r_axis - lambda * f.phi_axis,
                       mom.r_beta - lambda * f.phi_radial);
  return {std::move(momentum), divergence_residual(u)};
}

SelfsimSolution solve_selfsimilar(const StokesSystem& sys, const ForceSpec& f,
                                  const SolverConfig& cfg) {
  return homotopy_solve(sys, f, cfg, nullptr);
}

SelfsimSolution solve_selfsimilar(const StokesSystem& sys, const ForceSpec& f,
                                  const SolverConfig& cfg, const AxisymField& u0,
                                  const ScalarSphereField& p0) {
  const Eigen::VectorXd z0 = sys.pack(u0, p0);
  return homotopy_solve(sys, f, cfg, &z0);
}

std::vector<SweepRow> amplitude_sweep(const StokesSystem& sys, const ForceSpec& shape,
                                      const std::vector<double>& amplitudes,
                                      const SolverConfig& cfg, int jobs) {
  using clock = std::chrono::steady_clock;
  std::vector<SweepRow> rows(amplitudes.size());

  auto run_one = [&](std::size_t i, const SelfsimSolution* warm) {
    const ForceSpec f = shape.scaled(amplitudes[i]);
    const auto t0 = clock::now();
    SelfsimSolution sol = (warm != nullptr && warm->trace.success)
                              ? solve_selfsimilar(sys, f, cfg, warm->velocity, warm->pressure)
                              : solve_selfsimilar(sys, f, cfg);
    SweepRow row;
    row.amplitude = amplitudes[i];
    row.converged = sol.trace.success;
    row.residual = sol.residual_norm;
    row.x_norm = x_norm(sol.velocity);
    for (const TraceRecord& r : sol.trace.records) row.newton_iters += r.newton_iters;
    if (row.converged) {
      row.energy_gap = energy_identity_gap(sol.velocity, sol.pressure, f, 1.0);
      row.radial_gap = radial_average_gap(sol.velocity, head(sol.velocity, sol.pressure), f);
    }
    row.seconds = std::chrono::duration<double>(clock::now() - t0).count();
    rows[i] = row;
    return sol;
  };

  if (jobs <= 1) {
    SelfsimSolution prev;
    bool have_prev = false;
    for (std::size_t i = 0; i < amplitudes.size(); ++i) {
      prev = run_one(i, have_prev ? &prev : nullptr);
      have_prev = true;
    }
    return rows;
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next.fetch_add(1); i < amplitudes.size(); i = next.fetch_add(1))
      run_one(i, nullptr);
  };
  std::vector<std::thread> pool;
  const int nthreads = std::min<int>(jobs, static_cast<int>(amplitudes.size()));
  pool.reserve(nthreads);
  for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  return rows;
}

double uniqueness_probe(const StokesSystem& sys, const ForceSpec& f, const SolverConfig& cfg,
                        int initializations, std::uint64_t seed, int* failures) {
  if (initializations < 2) throw std::invalid_argument("uniqueness_probe: need >= 2 runs");
  const int m = sys.grid()->size;
  const Eigen::VectorXd b = sys.rhs(f, 1.0);
  const double scale = rhs_scale(sys, b);
  const double init_scale = 0.1 * std::max(1.0, x_norm(linear_response(sys, f)));

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  std::vector<AxisymField> solutions;
  int failed = 0;
  for (int run = 0; run < initializations; ++run) {
    Eigen::VectorXd z(3 * m);
    for (int i = 0; i < z.size(); ++i) z(i) = init_scale * gauss(rng);
    if (run == 0) z.setZero();  // include the canonical start
    NewtonOutcome nw = newton_at_lambda(sys, b, scale, z, cfg);
    if (nw.converged) {
      solutions.push_back(sys.unpack(z).first);
    } else {
      ++failed;
      log(LogLevel::info, "solver", "uniqueness probe run ", run, " did not converge (residual ",
          nw.residual, "), excluded");
    }
  }
  if (failures != nullptr) *failures = failed;
  if (solutions.size() < 2)
    throw std::runtime_error("uniqueness_probe: fewer than two runs converged");

  double dist = 0.0;
  for (std::size_t i = 0; i < solutions.size(); ++i)
    for (std::size_t j = i + 1; j < solutions.size(); ++j) {
      AxisymField diff(solutions[i].grid, solutions[i].alpha - solutions[j].alpha,
                       solutions[i].beta - solutions[j].beta);
      dist = std::max(dist, x_norm(diff));
    }
  return dist;
}

AxisymField linear_response(const StokesSystem& sys, const ForceSpec& f) {
  return solve_stokes(sys, f, 1.0).velocity;
}

}  // namespace ssns
