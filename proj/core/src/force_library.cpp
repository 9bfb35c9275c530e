#include "ssns/force_library.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace ssns {

const std::vector<ForceFamilyInfo>& force_families() {
  static const std::vector<ForceFamilyInfo> families = {
      {"radial-constant", "f^r = A", true, true},
      {"radial-cosine", "f^r = A (1 + cos theta)", true, true},
      {"radial-parabolic", "f^r = A sin^2 theta", true, true},
      {"mixed", "f^r = A cos theta, f^theta = A sin theta", false, false},
  };
  return families;
}

ForceSpec make_force(const std::string& family, double amplitude, GridPtr grid,
                     bool require_nonneg) {
  if (!grid) throw std::invalid_argument("make_force: null grid");
  const Grid& g = *grid;
  const Eigen::ArrayXd x = g.x.array();
  const int m = g.size;

  ForceSpec f;
  f.grid = grid;
  f.family = family;
  f.amplitude = amplitude;
  f.has_analytic_div = true;
  f.phi_axis = Eigen::VectorXd::Zero(m);

  if (family == "radial-constant") {
    f.phi_radial = Eigen::VectorXd::Constant(m, amplitude);
    f.div_profile = Eigen::VectorXd::Constant(m, (g.n - 4.0) * amplitude);
  } else if (family == "radial-cosine") {
    f.phi_radial = (amplitude * (1.0 + x)).matrix();
    f.div_profile = (g.n - 4.0) * f.phi_radial;
  } else if (family == "radial-parabolic") {
    f.phi_radial = (amplitude * (1.0 - x.square())).matrix();
    f.div_profile = (g.n - 4.0) * f.phi_radial;
  } else if (family == "mixed") {
    // f^r = A x, f^theta = A sin(theta)  <=>  phi_axis = -A, phi_radial = 2 A x
    f.phi_axis = Eigen::VectorXd::Constant(m, -amplitude);
    f.phi_radial = (2.0 * amplitude * x).matrix();
    f.div_profile = ((2.0 * g.n - 5.0) * amplitude * x).matrix();
  } else {
    throw std::invalid_argument("make_force: unknown family '" + family + "'");
  }

  f.f_r = (f.phi_radial.array() + x * f.phi_axis.array()).matrix();
  f.f_theta = (-f.phi_axis.array() * g.sin_theta.array()).matrix();
  f.radial_nonneg =
      f.f_theta.isZero(0.0) && f.f_r.minCoeff() >= 0.0;
  if (require_nonneg && !f.radial_nonneg)
    throw std::invalid_argument("make_force: family '" + family + "' at amplitude " +
                                std::to_string(amplitude) +
                                " does not have a nonnegative radial profile");
  return f;
}

ScalarSphereField analytic_div(const ForceSpec& f) {
  if (!f.has_analytic_div)
    throw std::invalid_argument("analytic_div: force has no closed-form divergence");
  const Grid& g = *f.grid;
  const Eigen::ArrayXd x = g.x.array();
  const Eigen::VectorXd spectral =
      ((1.0 - x.square()) * (g.d1 * f.phi_axis).array() - 3.0 * x * f.phi_axis.array() +
       (g.n - 4.0) * f.phi_radial.array())
          .matrix();
  const double scale = std::max(1.0, f.div_profile.lpNorm<Eigen::Infinity>());
  const double gap = (spectral - f.div_profile).lpNorm<Eigen::Infinity>() / scale;
  if (gap > 1e-8)
    throw std::runtime_error("analytic_div: closed form and spectral route disagree (gap " +
                             std::to_string(gap) + ")");
  return ScalarSphereField(f.grid, f.div_profile);
}

}  // namespace ssns
