#pragma once

// Total head pressure H = |u|^2/2 + p and the scalar relations it satisfies.
//
// For the (-1)-homogeneous velocity and (-2)-homogeneous pressure, H is
// (-2)-homogeneous with trace Hbar = (alpha^2 + beta^2 + 2 alpha beta x)/2 + P.
// Two reductions are provided:
//   * the radial momentum relation  -Delta_S u^r + u^t.grad_S u^r = 2 Hbar + f^r,
//   * the full head equation
//       -Delta_S Hbar + (2n-8) Hbar - 2 u^r Hbar + U^t.grad_S Hbar
//         + Omega/2 - F.U + div_f = 0,
//     where Omega sums the squared antisymmetric ambient entries and div_f is
//     r^4 div f on the unit sphere.
// Both vanish identically on solutions of the momentum system.

#include "ssns/fields.hpp"
#include "ssns/rational.hpp"

#include <array>

namespace ssns {

// Integrability exponents attached to dimension n >= 5:
//   theta = (n-2)(n-1) / (2(n-3)),  q = (n-2)(n-1) / (4n-10)
// plus their conjugates.  `in_estimate_range` marks 5 <= n <= 16, where
// q < 4 and theta > n/2 hold; outside that window the struct is still
// populated but flagged.
struct Exponents {
  int n = 0;
  Rational theta;
  Rational q;
  Rational theta_conjugate;
  Rational q_conjugate;
  bool in_estimate_range = false;
};

// Throws for n < 5 (the exponents degenerate at n = 4).
Exponents exponents(int n);

// Hbar = |U|^2/2 + P at the nodes.
ScalarSphereField head(const AxisymField& u, const ScalarSphereField& p);

// Residual of the radial momentum relation:
//   -Delta_S u^r + u^t.grad_S u^r - 2 Hbar - f^r
// (pass the force already scaled by the homotopy parameter).
ScalarSphereField radial_relation_residual(const AxisymField& u, const ScalarSphereField& h,
                                           const ForceSpec& f);

// Residual of the head equation above; `f` already carries its scaling.
ScalarSphereField head_pde_residual(const AxisymField& u, const ScalarSphereField& h,
                                    const ForceSpec& f);

// (‖H_+‖_{L^theta}, ‖H_-‖_{L^1}, ‖H_+‖_{L^1}) with theta = exponents(n).theta.
std::array<double, 3> positive_part_norms(const ScalarSphereField& h);

// nodal clips
ScalarSphereField positive_part(const ScalarSphereField& g);
ScalarSphereField negative_part(const ScalarSphereField& g);  // >= 0, g = g_+ - g_-

}  // namespace ssns
