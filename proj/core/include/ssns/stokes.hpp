#pragma once

// Linear Stokes solve on the sphere for (-1)-homogeneous axisymmetric fields.
//
// The ambient problem  -Delta u + grad p = rhs/r^3,  div u = 0  with
// u = U(sigma)/r, p = pbar(sigma)/r^2 reduces to a coupled system for the
// nodal profiles (A, B, P) of alpha, beta, pbar in x = cos(theta):
//
//   axis row      (e_n component):   (-L + (n-3)) A - 2 B' + P'            = rhs_axis
//   radial row    (sigma projection): x (-L + (n-3)) A + (-L + (2n-4)) B - 2P = rhs_radial
//   constraint row (r^2 div u):       (1-x^2) A' - x A + (n-2) B           = 0
//
// where L = (1-x^2) d^2/dx^2 - (n-1) x d/dx.  The radial row is the dot
// product of the momentum equation with sigma; the +-2xB' cross terms cancel
// exactly there, which is why no first-derivative coupling of B survives.
// The assembled operator is cross-validated against the componentwise
// Cartesian evaluation of -Delta u + grad p in the test suite.

#include "ssns/fields.hpp"
#include "ssns/grid.hpp"

#include <Eigen/Dense>

namespace ssns {

struct StokesSolution {
  AxisymField velocity;
  ScalarSphereField pressure;
  double residual_norm = 0.0;      // row-relative: ||(M z - rhs)/s||_inf / max(1, ||rhs/s||_inf)
  double rcond_estimate = 0.0;     // reciprocal condition estimate of the equilibrated LU
  double gauge_shift = 0.0;        // constant removed from the pressure (0 when ungauged)
};

class StokesSystem {
 public:
  explicit StokesSystem(GridPtr grid);

  const GridPtr& grid() const { return grid_; }
  const Eigen::MatrixXd& matrix() const { return m_; }
  double rcond() const { return rcond_; }

  // Per-row infinity norms of the assembled matrix, floored at 1.  The second-
  // derivative rows grow like N^4 (faster for heavy Jacobi weights at large n),
  // so the factorization and every residual metric work in the row-equilibrated
  // system s^{-1} M z = s^{-1} b; otherwise no fixed tolerance is attainable
  // across dimensions.
  const Eigen::VectorXd& row_scales() const { return row_scale_; }

  // Stacked unknown layout [A; B; P].
  Eigen::VectorXd pack(const AxisymField& u, const ScalarSphereField& p) const;
  std::pair<AxisymField, ScalarSphereField> unpack(const Eigen::VectorXd& z) const;

  Eigen::VectorXd apply(const Eigen::VectorXd& z) const { return m_ * z; }
  Eigen::VectorXd apply(const AxisymField& u, const ScalarSphereField& p) const;

  // Right-hand side [lambda*phi_axis; lambda*f^r; 0] of the momentum rows.
  Eigen::VectorXd rhs(const ForceSpec& f, double lambda = 1.0) const;

  // Row-equilibrated LU solve with one step of iterative refinement.
  // Thread-safe: the factorization is computed once at construction and never
  // mutated.
  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;

  // Smallest singular value of the assembled (unequilibrated) operator
  // (O(N^3) diagnostic).
  double smallest_singular_value() const;

 private:
  GridPtr grid_;
  Eigen::MatrixXd m_;
  Eigen::VectorXd row_scale_;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
  double rcond_ = 0.0;
};

StokesSystem assemble_stokes(GridPtr grid);

// Solves the linear Stokes problem for the given force profiles.  The coupled
// system pins the pressure (including its mean) for every n >= 4, so no gauge
// is needed for solvability; `mean_zero_pressure` optionally shifts the
// returned pressure to zero quadrature mean and records the shift in
// `gauge_shift`.  Note the shifted pair no longer satisfies the radial
// momentum row exactly (the pressure enters it undifferentiated), so identity
// checks should consume the ungauged output.
StokesSolution solve_stokes(const StokesSystem& sys, const ForceSpec& f, double lambda = 1.0,
                            bool mean_zero_pressure = false);

// Advection forcing [N_axis; x.*N_axis + N_beta; 0] produced by (v.grad)v.
Eigen::VectorXd advection_rhs(const StokesSystem& sys, const AxisymField& v);

// One fixed-point sweep: solve -Delta u + grad p = lambda f - (v.grad)v.
AxisymField picard_map(const StokesSystem& sys, const AxisymField& v, const ForceSpec& f,
                       double lambda);

// Explicit fundamental tensor of the steady Stokes system in R^n:
//   G_ij(x) = 1/(2 n omega_n) [ delta_ij / ((n-2) |x|^{n-2}) + x_i x_j / |x|^n ],
// omega_n = pi^{n/2} / Gamma(n/2 + 1) the unit-ball volume.  Used by the
// low-accuracy convolution oracle in the tests; the production path is the
// sphere-reduced solve.
Eigen::MatrixXd green_tensor(const Eigen::VectorXd& x, int n);

// Recovers the pressure profile from velocity and force through the scalar
// relation -L P + (2n-8) P = trace((du)^2) - r^4 div f at r = 1 (du the
// ambient gradient entries).  For n = 4 the operator kills constants, so the
// mean-zero representative is returned through a bordered solve and the
// Lagrange multiplier is logged.
ScalarSphereField recover_pressure(const AxisymField& u, const ForceSpec& f);

}  // namespace ssns
