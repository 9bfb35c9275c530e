#pragma once

// One-dimensional self-similar model problem on the half-line x > 0:
//   -u'' + u u' = c / x^3,
// with the ansatz u = C/x, which reduces to the quadratic C^2 + 2C + c = 0,
// i.e. C = -1 +- sqrt(1 - c).  Two solutions for c < 1, one at c = 1, none
// for c > 1.  Besides the closed forms, the module traces the (c, C) branch
// curve by pseudo-arclength continuation through the fold at (1, -1), and has
// a finite-domain BVP mode on [1, R] that exercises the same Newton machinery
// with homogeneous self-similar boundary data.

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace ssns {

enum class ToyMultiplicity { Two, One, None };

struct ToyBranch {
  double c = 0.0;
  std::vector<double> roots;  // descending order (upper branch first)
  ToyMultiplicity multiplicity = ToyMultiplicity::None;
};

// Roots of C^2 + 2C + c = 0 by the closed form; empty set for c > 1.
ToyBranch exact_branches(double c);

// x^3-scaled residual of u = C/x against the model: -2C - C^2 - c.
double residual_check(double C, double c);

// inf over real C of |C^2 + 2C + c|: equals c - 1 for c >= 1 and 0 otherwise.
// For c > 1 this is a nonexistence certificate: no C can drive the residual
// below the floor.
double nonexistence_floor(double c);

// Newton on the scalar reduction at fixed c from the given start; reports the
// final residual (which stays >= nonexistence_floor(c)).
struct ToyNewtonProbe {
  bool converged = false;
  double C = 0.0;
  double residual = 0.0;
  int iters = 0;
};
ToyNewtonProbe toy_newton_probe(double c, double c_guess, int max_iters = 60,
                                double tol = 1e-13);

struct ToyDiagramPoint {
  double c = 0.0;
  double C = 0.0;
  int branch_id = 0;  // 0: upper branch (C > -1), 1: lower branch
  bool fold = false;  // point closest to the detected fold
};

struct ToyDiagram {
  std::vector<ToyDiagramPoint> points;
  bool fold_found = false;
  double fold_c = 0.0;
  double fold_C = 0.0;
  bool stalled = false;
  std::string message;
};

// Pseudo-arclength continuation on C^2 + 2C + c = 0 starting on the upper
// branch at c_start, through the fold, back down to c_end on the lower
// branch.  The fold is refined by Newton on {residual = 0, d residual/dC = 0}.
ToyDiagram fold_continuation(double c_start, double c_end, int steps);

// Finite-domain drill: second-order finite differences for
//   -u'' + u u' = c/x^3  on [1, R],
// unknowns (u at the nodes, C) with u(1) = C, u(R) = C/R and the self-similar
// closure u'(1) = -u(1).  Converges to u = C/x with the quadratic's root as
// the grid refines.
struct ToyBvpResult {
  bool converged = false;
  double C = 0.0;
  double residual = 0.0;
  int newton_iters = 0;
  Eigen::VectorXd x;  // nodes
  Eigen::VectorXd u;  // solution values
};
ToyBvpResult toy_bvp_solve(double c, double domain_end, int num_points, double c_guess,
                           int max_iters = 50, double tol = 1e-12);

}  // namespace ssns
