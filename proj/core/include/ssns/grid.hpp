#pragma once

// Collocation grid on the polar angle of S^{n-1} for axisymmetric fields.
//
// Profiles are stored by their nodal values at the Gauss-Jacobi points of the
// weight (1-x^2)^{(n-3)/2} in x = cos(theta).  With that choice
//   * integral_0^pi g(theta) sin^{n-2}(theta) dtheta  ==  sum_k w_k g(x_k)
//     exactly for polynomials in x up to degree 2N-1, and
//   * smooth axisymmetric fields on the sphere correspond to smooth functions
//     of x, so no pole conditions are needed anywhere.
// Differentiation acts on the degree-(N-1) interpolant through dense
// barycentric matrices.  Grids are immutable once built; share them freely
// across threads.

#include <Eigen/Dense>

#include <cstdint>
#include <memory>
#include <string>

namespace ssns {

struct Grid {
  int n = 0;        // ambient dimension (>= 4)
  int size = 0;     // number of nodes (>= 8)

  // Nodes ordered by increasing polar angle; x = cos(theta) is then
  // decreasing.  All vectors/matrices below use this one ordering.
  Eigen::VectorXd theta;
  Eigen::VectorXd x;
  Eigen::VectorXd sin_theta;
  Eigen::VectorXd weights;        // Gauss-Jacobi weights in the x measure
  double sphere_prefactor = 0.0;  // |S^{n-2}|, turns nodal sums into sphere integrals

  Eigen::MatrixXd d1;             // d/dx at the nodes
  Eigen::MatrixXd d2;             // d^2/dx^2 at the nodes
  Eigen::VectorXd bary_w;         // barycentric weights (common scale factored out)

  // integral over S^{n-1} of the axisymmetric profile g
  double integrate(const Eigen::VectorXd& g) const;

  // interpolant of nodal values evaluated at arbitrary t in [-1, 1]
  double interpolate(const Eigen::VectorXd& values, double t) const;

  // FNV-1a over the node/weight bytes; identifies the discretization in reports
  std::uint64_t checksum() const;
  std::string checksum_hex() const;
};

using GridPtr = std::shared_ptr<const Grid>;

// Builds the collocation grid.  Throws std::invalid_argument for n < 4 or
// node counts below 8.
GridPtr build_grid(int n, int num_nodes);

// |S^{m}| = 2 pi^{(m+1)/2} / Gamma((m+1)/2), the area of the unit m-sphere.
double sphere_area(int m);

// Volume of the unit ball in R^n.
double ball_volume(int n);

// Nodes and weights for the Jacobi weight (1-t)^a (1+t)^b on [-1, 1],
// ascending in t.  Exposed for reuse by the quadrature-heavy modules.
void gauss_jacobi(int npts, double a, double b, Eigen::VectorXd& t, Eigen::VectorXd& w);

// Nodes and weights for Gauss-Legendre on [lo, hi], ascending.
void gauss_legendre(int npts, double lo, double hi, Eigen::VectorXd& t, Eigen::VectorXd& w);

}  // namespace ssns
