#pragma once

// Nodal field types on the polar-angle grid.
//
// An axisymmetric swirl-free vector trace is stored through the decomposition
//   U(sigma) = alpha(theta) e_n + beta(theta) sigma,
// so the radial component is u^r = beta + alpha cos(theta) and the polar
// tangential component is u^theta = -alpha sin(theta).  Profiles live at the
// grid nodes; all operations treat fields as immutable values.

#include "ssns/grid.hpp"

#include <Eigen/Dense>

#include <string>

namespace ssns {

struct ScalarSphereField {
  GridPtr grid;
  Eigen::VectorXd values;

  ScalarSphereField() = default;
  ScalarSphereField(GridPtr g, Eigen::VectorXd v);
  static ScalarSphereField zero(GridPtr g);
};

struct AxisymField {
  GridPtr grid;
  Eigen::VectorXd alpha;  // e_n component
  Eigen::VectorXd beta;   // sigma component

  AxisymField() = default;
  AxisymField(GridPtr g, Eigen::VectorXd a, Eigen::VectorXd b);
  static AxisymField zero(GridPtr g);

  Eigen::VectorXd radial() const;            // u^r = beta + x.*alpha
  Eigen::VectorXd polar_tangential() const;  // u^theta = -alpha.*sin(theta)
};

// (-3)-homogeneous axisymmetric force trace f = (f^r sigma + f^theta e_theta)/r^3.
// Profiles are stored already scaled by the amplitude; `amplitude` records the
// multiplier used by the originating family.  phi_axis/phi_radial give the
// e_n/sigma decomposition (f^r = phi_radial + x.*phi_axis, f^theta =
// -phi_axis.*sin(theta)), which is the form the assembled equations consume.
struct ForceSpec {
  GridPtr grid;
  Eigen::VectorXd f_r;
  Eigen::VectorXd f_theta;
  Eigen::VectorXd phi_axis;
  Eigen::VectorXd phi_radial;
  double amplitude = 0.0;
  std::string family;
  bool radial_nonneg = false;    // f^theta == 0 and f^r >= 0 everywhere
  bool has_analytic_div = false;
  Eigen::VectorXd div_profile;   // r^4 * div f on the unit sphere

  ForceSpec scaled(double factor) const;  // multiplies all profiles (and amplitude)
};

// r^4 * div f at r = 1: the stored analytic profile when the family provides
// one, otherwise (1-x^2) phi_axis' - 3 x phi_axis + (n-4) phi_radial evaluated
// with the spectral derivative.
Eigen::VectorXd force_divergence_profile(const ForceSpec& f);

}  // namespace ssns
