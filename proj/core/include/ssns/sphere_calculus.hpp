#pragma once

// Differential operators on S^{n-1} for axisymmetric traces, in two
// independently coded routes:
//
//   1. closed form in x = cos(theta): the scalar Laplace-Beltrami becomes
//      L = (1-x^2) d2 - (n-1) x d1, advection and divergence become
//      polynomial-coefficient expressions, nothing is singular at the poles;
//   2. componentwise Cartesian assembly of U_i = alpha delta_{in} + beta sigma_i
//      using grad_S sigma_i = e_i - sigma_i sigma and
//      Delta_S sigma_i = -(n-1) sigma_i.
//
// Route 2 is the source of truth; route 1 is what the solver assembles.  The
// two must agree at every node, and several operations check that on the fly.

#include "ssns/fields.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <utility>

namespace ssns {

// ---- scalar operators -------------------------------------------------------

// Laplace-Beltrami of an axisymmetric scalar, evaluated at the nodes.
ScalarSphereField laplace_beltrami(const ScalarSphereField& g);

// Polar component g'(theta) of the surface gradient (the full gradient is
// g'(theta) e_theta).
ScalarSphereField surface_gradient(const ScalarSphereField& g);

// L^p norm over S^{n-1}; requires p >= 1.
double lp_norm(const ScalarSphereField& g, double p);

// The nodal matrix of the scalar Laplace-Beltrami operator in x-form.
Eigen::MatrixXd laplace_beltrami_matrix(const Grid& grid);

// ---- pointwise Cartesian samples -------------------------------------------

// All axisymmetric quantities can be evaluated at the canonical point
// sigma = (sin theta, 0, ..., 0, cos theta); by symmetry the scalars obtained
// from the matrices below are the correct nodal values.
struct AmbientSample {
  int k = 0;                 // node index
  Eigen::VectorXd sigma;     // unit position
  Eigen::VectorXd e_theta;   // unit polar tangent
  Eigen::VectorXd w;         // the vector trace W at the node
  Eigen::MatrixXd grad_s;    // grad_s(i,j) = (grad_S W_j)_i
  Eigen::MatrixXd du;        // du(i,j) = d_i w_j of the degree-homogeneous extension
};

// Sample of the field W = a e_n + b sigma extended with the given homogeneity
// degree (-1 for velocity, -3 for forces):
//   du(i,j) = (grad_S W_j)_i + degree * sigma_i W_j   at r = 1.
AmbientSample ambient_sample(const Grid& grid, const Eigen::VectorXd& a,
                             const Eigen::VectorXd& b, int k, int degree);

// ---- vector-field operations -------------------------------------------------

// Divergence constraint residual r^2 div u = -(alpha' sin + alpha cos) + (n-2) beta,
// i.e. (1-x^2) A' - x A + (n-2) B in x-form.  The value is cross-checked
// against the direct Cartesian sum  sum_i (grad_S U_i)_i - U.sigma  at every
// node and the call throws if the routes disagree.
ScalarSphereField divergence_residual(const AxisymField& u);

// integral over S^{n-1} of sum_{ij} (d_i u_j)^2 for the (-1)-homogeneous
// extension, evaluated from the ambient entries.  Also computes the tangential
// route  integral (|grad_S U|^2 + |U|^2)  and throws if the two differ by more
// than 1e-10 relative (they are equal pointwise).
double grad_norm_squared(const AxisymField& u);

// The two routes above, returned unguarded as (ambient, tangential).
std::pair<double, double> grad_norm_squared_routes(const AxisymField& u);

// sup_k |U| + sup_k |grad u|_F  over the nodes (ambient entries at r = 1).
double x_norm(const AxisymField& u);

// Convective advection (v.grad)v at r = 1, reduced to (e_n, sigma) components.
// Closed form in x:
//   N_axis  = (1-x^2) A A' - x A^2
//   N_sigma-component = (1-x^2) A B' - B^2 - 2 x A B
struct AdvectionProfiles {
  Eigen::VectorXd n_axis;
  Eigen::VectorXd n_beta;
};
AdvectionProfiles advection_profiles(const AxisymField& v);

// Same quantity assembled from the ambient entries sum_i V_i d_i v_j
// (independent route, used by the fixed-point map and in cross-checks).
AdvectionProfiles advection_cartesian(const AxisymField& v);

// Divergence-form advection d_k(v_k v_j); agrees with the convective form for
// divergence-free fields.
AdvectionProfiles advection_divergence_form(const AxisymField& v);

// ---- momentum operator -------------------------------------------------------

// Components of  -Delta_S U + (n-3) U + (U.grad_S)U - u^r U + grad_S p - 2 p sigma
// in the (e_n, sigma) decomposition.  This is r^3 times the ambient momentum
// operator  -Delta u + (u.grad)u + grad p  of the reconstructed fields.
struct MomentumProfiles {
  Eigen::VectorXd r_axis;  // e_n component
  Eigen::VectorXd r_beta;  // sigma component
};
MomentumProfiles momentum_profiles(const AxisymField& u, const ScalarSphereField& p,
                                   bool include_advection = true);

// Independent assembly of the same operator through componentwise Cartesian
// product rules (route 2 above).
MomentumProfiles momentum_profiles_cartesian(const AxisymField& u, const ScalarSphereField& p,
                                             bool include_advection = true);

// ---- ambient finite-difference corroboration ---------------------------------

struct AmbientCheckOptions {
  int samples = 16;
  double step = 1e-4;           // FD step
  int stencil_order = 4;        // 2 or 4
  double threshold = 1e-5;      // throw above this relative deviation
  std::uint64_t seed = 0x5eed;
  double radius_lo = 0.9;       // sample radii around the unit sphere
  double radius_hi = 1.1;
};

// Reconstructs u = U/r, p = P/r^2 at random ambient points, evaluates
// -Delta u + (u.grad)u + grad p and div u by central finite differences in the
// n coordinates, and compares against the sphere-side evaluation of the same
// residuals.  Returns the max relative deviation; throws if it exceeds
// opts.threshold.
double ambient_consistency_check(const AxisymField& u, const ScalarSphereField& p,
                                 const AmbientCheckOptions& opts = {});

}  // namespace ssns
