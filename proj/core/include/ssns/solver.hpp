#pragma once

// Nonlinear solver for the self-similar system
//   -Delta u + (u.grad)u + grad p = lambda f,  div u = 0,
// reduced to profiles on S^{n-1}.  A homotopy in lambda walks from the trivial
// solution at lambda = 0 to the target force at lambda = 1; each step is
// solved by damped Newton with the exact advection Jacobian, with plain
// fixed-point (Picard) sweeps as a fallback when Newton stalls.

#include "ssns/fields.hpp"
#include "ssns/stokes.hpp"

#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace ssns {

struct SolverConfig {
  double initial_step = 0.25;  // first homotopy increment in lambda
  double min_step = 1e-4;      // stall threshold for the step controller
  double grow = 1.6;           // step growth after fast convergence
  double shrink = 0.5;         // step reduction after a failed Newton solve
  double newton_tol = 1e-11;   // scaled residual target
  int max_newton = 25;
  int max_steps = 200;         // cap on attempted continuation steps
  bool secant_predictor = true;
  bool picard_fallback = true;
  int max_picard = 600;
};

struct TraceRecord {
  double lambda = 0.0;
  int newton_iters = 0;
  double residual = 0.0;
  double x_norm = 0.0;   // sup|U| + sup|grad u| over the nodes
  bool picard = false;   // step rescued by the fixed-point fallback
};

struct ContinuationTrace {
  std::vector<TraceRecord> records;
  bool success = false;
  double final_lambda = 0.0;
  std::string message;
  // scaled residual history of the Newton loop at the last accepted step
  // (for convergence-order diagnostics)
  std::vector<double> last_newton_residuals;
};

struct SelfsimSolution {
  AxisymField velocity;
  ScalarSphereField pressure;
  double residual_norm = std::numeric_limits<double>::infinity();
  ContinuationTrace trace;
};

// Momentum residual (e_n, sigma components as alpha/beta slots) and
// divergence-constraint residual of (U, P) against the force lambda*f.
// Computed through the closed-form momentum profiles, independently of the
// assembled matrix the solver iterates on.
std::pair<AxisymField, ScalarSphereField> nonlinear_residual(const AxisymField& u,
                                                             const ScalarSphereField& p,
                                                             const ForceSpec& f, double lambda);

// Homotopy solve from the trivial solution.  For n > 16 with a force outside
// the nonnegative-radial class a warning is logged: that regime has no
// existence guarantee and runs are exploratory.
SelfsimSolution solve_selfsimilar(const StokesSystem& sys, const ForceSpec& f,
                                  const SolverConfig& cfg = {});

// Warm-started variant: tries Newton directly at lambda = 1 from the guess and
// falls back to the full homotopy if that fails.
SelfsimSolution solve_selfsimilar(const StokesSystem& sys, const ForceSpec& f,
                                  const SolverConfig& cfg, const AxisymField& u0,
                                  const ScalarSphereField& p0);

struct SweepRow {
  double amplitude = 0.0;
  bool converged = false;
  double x_norm = 0.0;
  double residual = 0.0;
  double energy_gap = 0.0;   // energy-identity defect of the converged solution
  double radial_gap = 0.0;   // radial-average identity defect
  int newton_iters = 0;      // total Newton iterations spent
  double seconds = 0.0;
};

// Solves the family amplitude * shape for each amplitude.  jobs == 1 runs
// sequentially with warm starts along the list; jobs > 1 runs cold starts in
// parallel (warm-starting is inherently sequential).
std::vector<SweepRow> amplitude_sweep(const StokesSystem& sys, const ForceSpec& shape,
                                      const std::vector<double>& amplitudes,
                                      const SolverConfig& cfg = {}, int jobs = 1);

// Newton from `initializations` random initial fields at lambda = 1; returns
// the max pairwise x-norm distance among the converged runs (non-convergent
// runs are excluded and counted in *failures if given).
double uniqueness_probe(const StokesSystem& sys, const ForceSpec& f, const SolverConfig& cfg,
                        int initializations, std::uint64_t seed = 0x5eed,
                        int* failures = nullptr);

// The linear response T(1, 0): velocity of the Stokes solve at lambda = 1.
AxisymField linear_response(const StokesSystem& sys, const ForceSpec& f);

}  // namespace ssns
