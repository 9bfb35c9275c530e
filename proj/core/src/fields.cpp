#include "ssns/fields.hpp"

#include <stdexcept>
#include <utility>

namespace ssns {

ScalarSphereField::ScalarSphereField(GridPtr g, Eigen::VectorXd v)
    : grid(std::move(g)), values(std::move(v)) {
  if (!grid) throw std::invalid_argument("ScalarSphereField: null grid");
  if (values.size() != grid->size) throw std::invalid_argument("ScalarSphereField: size mismatch");
}

ScalarSphereField ScalarSphereField::zero(GridPtr g) {
  const int m = g->size;
  return ScalarSphereField(std::move(g), Eigen::VectorXd::Zero(m));
}

AxisymField::AxisymField(GridPtr g, Eigen::VectorXd a, Eigen::VectorXd b)
    : grid(std::move(g)), alpha(std::move(a)), beta(std::move(b)) {
  if (!grid) throw std::invalid_argument("AxisymField: null grid");
  if (alpha.size() != grid->size || beta.size() != grid->size)
    throw std::invalid_argument("AxisymField: size mismatch");
}

AxisymField AxisymField::zero(GridPtr g) {
  const int m = g->size;
  return AxisymField(std::move(g), Eigen::VectorXd::Zero(m), Eigen::VectorXd::Zero(m));
}

Eigen::VectorXd AxisymField::radial() const {
  return beta.array() + grid->x.array() * alpha.array();
}

Eigen::VectorXd AxisymField::polar_tangential() const {
  return -(alpha.array() * grid->sin_theta.array());
}

Eigen::VectorXd force_divergence_profile(const ForceSpec& f) {
  if (f.has_analytic_div) return f.div_profile;
  const Grid& g = *f.grid;
  const Eigen::ArrayXd x = g.x.array();
  return ((1.0 - x.square()) * (g.d1 * f.phi_axis).array() - 3.0 * x * f.phi_axis.array() +
          (g.n - 4.0) * f.phi_radial.array())
      .matrix();
}

ForceSpec ForceSpec::scaled(double factor) const {
  ForceSpec out = *this;
  out.f_r *= factor;
  out.f_theta *= factor;
  out.phi_axis *= factor;
  out.phi_radial *= factor;
  out.amplitude *= factor;
  if (has_analytic_div) out.div_profile *= factor;
  if (factor < 0.0) out.radial_nonneg = false;
  return out;
}

}  // namespace ssns
