#pragma once

// Built-in (-3)-homogeneous axisymmetric force families.  All profiles are
// polynomial in x = cos(theta): exactly representable on the grid, trivially
// Lipschitz on the sphere, with closed-form divergence.
//
//   radial-constant    f^r = A,           f^theta = 0
//   radial-cosine      f^r = A (1 + x),   f^theta = 0
//   radial-parabolic   f^r = A (1 - x^2), f^theta = 0
//   mixed              f^r = A x,         f^theta = A sin(theta)
//
// The three radial families have nonnegative f^r for A >= 0 and qualify for
// the positive-radial-force analysis; "mixed" has a sign-changing radial part
// and a genuine tangential component.

#include "ssns/fields.hpp"
#include "ssns/grid.hpp"

#include <string>
#include <vector>

namespace ssns {

struct ForceFamilyInfo {
  std::string name;
  std::string description;
  bool radial_only = false;                   // f^theta identically zero
  bool nonneg_for_positive_amplitude = false; // f^r >= 0 whenever A >= 0
};

const std::vector<ForceFamilyInfo>& force_families();

// Samples the named family at amplitude A on the grid, attaching the analytic
// divergence profile.  Throws on unknown family names.  If `require_nonneg`
// is set, throws unless the sampled f^r is nonnegative with f^theta == 0.
ForceSpec make_force(const std::string& family, double amplitude, GridPtr grid,
                     bool require_nonneg = false);

// Analytic r^4 div f profile, cross-checked on the fly against the spectral
// route (1-x^2) phi_axis' - 3 x phi_axis + (n-4) phi_radial; throws if the two
// disagree beyond 1e-8 relative.
ScalarSphereField analytic_div(const ForceSpec& f);

}  // namespace ssns
