#pragma once

// Reconstruction of the homogeneous fields off the sphere and their exact and
// finite-difference ambient calculus.  u(x) = U(x/|x|)/|x|, p(x) = P/|x|^2,
// f(x) = F/|x|^3; everything is determined by the nodal profiles, evaluated
// off-node through barycentric interpolation (derivatives of the interpolant
// are interpolants of the differentiated nodal values, exactly, since all
// profiles are polynomials of degree < N).

#include "ssns/fields.hpp"

#include <Eigen/Dense>

namespace ssns::ambient {

struct Reconstruction {
  GridPtr grid;
  Eigen::VectorXd a, b, p;        // nodal profiles
  Eigen::VectorXd da, db, dp;     // x-derivatives at the nodes
  Eigen::VectorXd lsa, lsb;       // scalar Laplace-Beltrami of a and b

  Eigen::VectorXd velocity(const Eigen::VectorXd& pt) const;
  double pressure(const Eigen::VectorXd& pt) const;

  // exact ambient entries d_i u_j (homogeneity chain rule, no differencing)
  Eigen::MatrixXd velocity_gradient(const Eigen::VectorXd& pt) const;
  // exact ambient momentum operator  -Delta u + (u.grad)u + grad p  at pt
  Eigen::VectorXd momentum_exact(const Eigen::VectorXd& pt) const;
  double divergence_exact(const Eigen::VectorXd& pt) const;
};

Reconstruction make_reconstruction(const AxisymField& u, const ScalarSphereField& p);

// value of the k-homogeneous scalar with the given trace profile at pt
double homogeneous_scalar_at(const Grid& grid, const Eigen::VectorXd& profile,
                             const Eigen::VectorXd& pt, int degree);

// ambient force vector f(pt) of a (-3)-homogeneous trace
Eigen::VectorXd force_at(const ForceSpec& f, const Eigen::VectorXd& pt);

// central finite differences of the reconstructed fields; order 2 or 4
Eigen::VectorXd fd_momentum(const Reconstruction& rec, const Eigen::VectorXd& pt, double h,
                            int order = 4);
double fd_divergence(const Reconstruction& rec, const Eigen::VectorXd& pt, double h,
                     int order = 4);

}  // namespace ssns::ambient
