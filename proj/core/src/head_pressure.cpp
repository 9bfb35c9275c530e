#include "ssns/head_pressure.hpp"

#include "ssns/sphere_calculus.hpp"

#include <cmath>
#include <stdexcept>

namespace ssns {

Exponents exponents(int n) {
  if (n < 5) throw std::invalid_argument("exponents: defined for n >= 5 only");
  Exponents e;
  e.n = n;
  e.theta = Rational(static_cast<std::int64_t>(n - 2) * (n - 1), 2 * (n - 3));
  e.q = Rational(static_cast<std::int64_t>(n - 2) * (n - 1), 4 * n - 10);
  e.theta_conjugate = e.theta / (e.theta - Rational(1));
  e.q_conjugate = e.q / (e.q - Rational(1));
  e.in_estimate_range = n <= 16;
  if (e.in_estimate_range) {
    // the integral estimates hinge on these three strict inequalities
    const bool ok = e.q < Rational(4) && e.theta > Rational(n, 2) &&
                    e.theta_conjugate < Rational(2);
    if (!ok) throw std::logic_error("exponents: range invariant violated");
  }
  return e;
}

ScalarSphereField head(const AxisymField& u, const ScalarSphereField& p) {
  if (u.grid != p.grid) throw std::invalid_argument("head: grid mismatch");
  const Eigen::ArrayXd a = u.alpha.array(), b = u.beta.array(), x = u.grid->x.array();
  Eigen::VectorXd h =
      (0.5 * (a.square() + b.square() + 2.0 * a * b * x) + p.values.array()).matrix();
  return ScalarSphereField(u.grid, std::move(h));
}

ScalarSphereField radial_relation_residual(const AxisymField& u, const ScalarSphereField& h,
                                           const ForceSpec& f) {
  if (u.grid != h.grid || u.grid != f.grid)
    throw std::invalid_argument("radial_relation_residual: grid mismatch");
  const Grid& g = *u.grid;
  const Eigen::ArrayXd x = g.x.array();
  const Eigen::ArrayXd s2 = 1.0 - x.square();
  const Eigen::VectorXd ur = u.radial();
  const Eigen::ArrayXd lsur = (laplace_beltrami_matrix(g) * ur).array();
  // u^t.grad_S u^r = alpha (1-x^2) d(u^r)/dx
  const Eigen::ArrayXd transport = u.alpha.array() * s2 * (g.d1 * ur).array();
  Eigen::VectorXd res =
      (-lsur + transport - 2.0 * h.values.array() - f.f_r.array()).matrix();
  return ScalarSphereField(u.grid, std::move(res));
}

ScalarSphereField head_pde_residual(const AxisymField& u, const ScalarSphereField& h,
                                    const ForceSpec& f) {
  if (u.grid != h.grid || u.grid != f.grid)
    throw std::invalid_argument("head_pde_residual: grid mismatch");
  const Grid& g = *u.grid;
  const int n = g.n;
  const Eigen::ArrayXd x = g.x.array();
  const Eigen::ArrayXd s2 = 1.0 - x.square();

  const Eigen::ArrayXd lsh = (laplace_beltrami_matrix(g) * h.values).array();
  const Eigen::ArrayXd dh = (g.d1 * h.values).array();
  const Eigen::ArrayXd ur = u.radial().array();

  // vorticity square Omega and F.U from the ambient entries
  Eigen::VectorXd omega(g.size), fu(g.size);
  for (int k = 0; k < g.size; ++k) {
    const AmbientSample s = ambient_sample(g, u.alpha, u.beta, k, -1);
    omega(k) = (s.du - s.du.transpose()).squaredNorm();  // sum over all ordered pairs
    fu(k) = f.f_r(k) * ur(k) + f.f_theta(k) * (-u.alpha(k) * g.sin_theta(k));
  }

  const Eigen::VectorXd divf = force_divergence_profile(f);

  Eigen::VectorXd res = (-lsh + (2.0 * n - 8.0) * h.values.array() -
                         2.0 * ur * h.values.array() + u.alpha.array() * s2 * dh +
                         0.5 * omega.array() - fu.array() + divf.array())
                            .matrix();
  return ScalarSphereField(u.grid, std::move(res));
}

ScalarSphereField positive_part(const ScalarSphereField& g) {
  return ScalarSphereField(g.grid, g.values.cwiseMax(0.0));
}

ScalarSphereField negative_part(const ScalarSphereField& g) {
  return ScalarSphereField(g.grid, (-g.values).cwiseMax(0.0));
}

std::array<double, 3> positive_part_norms(const ScalarSphereField& h) {
  const Exponents e = exponents(h.grid->n);
  const ScalarSphereField hp = positive_part(h);
  const ScalarSphereField hm = negative_part(h);
  return {lp_norm(hp, e.theta.value()), lp_norm(hm, 1.0), lp_norm(hp, 1.0)};
}

}  // namespace ssns
