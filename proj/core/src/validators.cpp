#include "ssns/validators.hpp"

#include "ssns/sphere_calculus.hpp"

#include <cmath>
#include <stdexcept>

namespace ssns {

namespace {

Eigen::VectorXd force_dot_velocity(const AxisymField& u, const ForceSpec& f) {
  return (f.f_r.array() * u.radial().array() +
          f.f_theta.array() * u.polar_tangential().array())
      .matrix();
}

Eigen::VectorXd speed_squared(const AxisymField& u) {
  const Eigen::ArrayXd a = u.alpha.array(), b = u.beta.array(), x = u.grid->x.array();
  return (a.square() + b.square() + 2.0 * a * b * x).matrix();
}

RatioEntry make_ratio(double lhs, double rhs) {
  RatioEntry e;
  e.lhs = lhs;
  e.rhs = rhs;
  if (rhs == 0.0) {
    e.indeterminate = true;
    e.ratio = 0.0;
  } else {
    e.ratio = lhs / rhs;
  }
  return e;
}

}  // namespace

double energy_identity_gap(const AxisymField& u, const ScalarSphereField& p, const ForceSpec& f,
                           double lambda) {
  if (u.grid != p.grid || u.grid != f.grid)
    throw std::invalid_argument("energy_identity_gap: grid mismatch");
  const Grid& g = *u.grid;
  const ScalarSphereField h = head(u, p);
  const double grad2 = grad_norm_squared(u);
  const double u2 = g.integrate(speed_squared(u));
  const double hur = g.integrate((h.values.array() * u.radial().array()).matrix());
  const double fu = g.integrate(force_dot_velocity(u, f));
  return std::abs(grad2 + (g.n - 4.0) * u2 + (g.n - 4.0) * hur - lambda * fu);
}

double radial_average_gap(const AxisymField& u, const ScalarSphereField& h, const ForceSpec& f) {
  if (u.grid != h.grid || u.grid != f.grid)
    throw std::invalid_argument("radial_average_gap: grid mismatch");
  const Grid& g = *u.grid;
  const double ur2 = g.integrate(u.radial().array().square().matrix());
  const double h_minus = g.integrate(positive_part(ScalarSphereField(h.grid, -h.values)).values);
  const double h_plus = g.integrate(positive_part(h).values);
  const double fr = g.integrate(f.f_r);
  return std::abs((g.n - 2.0) * ur2 + 2.0 * h_minus - (2.0 * h_plus + fr));
}

double sobolev_identity_gap(const AxisymField& u) {
  const auto [ambient, tangential] = grad_norm_squared_routes(u);
  return std::abs(ambient - tangential);
}

double lip_norm(const ForceSpec& f) {
  const Grid& g = *f.grid;
  double sup_f = 0.0, sup_df = 0.0;
  for (int k = 0; k < g.size; ++k) {
    const AmbientSample s = ambient_sample(g, f.phi_axis, f.phi_radial, k, -3);
    sup_f = std::max(sup_f, s.w.norm());
    sup_df = std::max(sup_df, s.du.norm());
  }
  return sup_f + sup_df;
}

IdentityReport estimate_report(const AxisymField& u, const ScalarSphereField& p,
                               const ForceSpec& f, double lambda) {
  if (u.grid != p.grid || u.grid != f.grid)
    throw std::invalid_argument("estimate_report: grid mismatch");
  const Grid& g = *u.grid;
  const int n = g.n;
  const ForceSpec fl = f.scaled(lambda);
  const ScalarSphereField h = head(u, p);

  IdentityReport rep;
  rep.energy_identity_gap = energy_identity_gap(u, p, f, lambda);
  rep.sobolev_identity_gap = sobolev_identity_gap(u);
  rep.radial_average_gap = radial_average_gap(u, h, fl);
  rep.nsnorm2_max_residual =
      radial_relation_residual(u, h, fl).values.lpNorm<Eigen::Infinity>();
  rep.headpde_max_residual = head_pde_residual(u, h, fl).values.lpNorm<Eigen::Infinity>();
  rep.divergence_max = divergence_residual(u).values.lpNorm<Eigen::Infinity>();
  rep.x_norm = x_norm(u);

  const Eigen::VectorXd ur = u.radial();
  const Eigen::VectorXd ur_plus = ur.cwiseMax(0.0);
  const Eigen::VectorXd ur_minus = (-ur).cwiseMax(0.0);
  const ScalarSphereField h_plus = positive_part(h);
  const ScalarSphereField h_minus = negative_part(h);
  const double grad2 = grad_norm_squared(u);
  const double u2 = g.integrate(speed_squared(u));
  const double fu_int = g.integrate(force_dot_velocity(u, fl));
  const double cross = g.integrate((h_plus.values.array() * ur_minus.array()).matrix());
  const double fr_urplus = g.integrate((fl.f_r.array() * ur_plus.array()).matrix());

  // split energy bound (follows from the identities; assertable)
  rep.estimate_ratios["energy_vs_split_bound"] =
      make_ratio(grad2 + (n - 4.0) * u2,
                 fu_int + (n - 4.0) * cross + 0.5 * (n - 4.0) * fr_urplus);

  if (n >= 5) {
    const Exponents e = exponents(n);
    const double theta = e.theta.value();
    const double q = e.q.value();
    const ScalarSphereField fdotu(u.grid, force_dot_velocity(u, fl));
    const ScalarSphereField divf(u.grid, force_divergence_profile(fl));
    const double h_plus_theta = lp_norm(h_plus, theta);
    const double fu_q = ssns::lp_norm(fdotu, q);
    const double divf_q = ssns::lp_norm(divf, q);
    const double fr_l1 = ssns::lp_norm(ScalarSphereField(u.grid, fl.f_r), 1.0);
    const double f2 =
        g.integrate((fl.f_r.array().square() + fl.f_theta.array().square()).matrix());
    const double flip = ssns::lip_norm(fl);

    rep.estimate_ratios["head_plus_ltheta_vs_forcedotu"] =
        make_ratio(h_plus_theta, fu_q + divf_q);
    rep.estimate_ratios["radial_l2_vs_force"] =
        make_ratio(g.integrate(ur.array().square().matrix()) +
                       ssns::lp_norm(h_minus, 1.0),
                   fu_q + divf_q + fr_l1);
    rep.estimate_ratios["gradu_vs_force_and_cross"] = make_ratio(grad2, f2 + cross);
    rep.estimate_ratios["head_plus_vs_lip"] =
        make_ratio(h_plus_theta, flip + std::pow(flip, 4));
    if (fl.radial_nonneg) {
      const double urp_2theta =
          ssns::lp_norm(ScalarSphereField(u.grid, ur_plus), 2.0 * theta);
      const double fr_inf = fl.f_r.lpNorm<Eigen::Infinity>();
      rep.estimate_ratios["urplus_l2theta_vs_radial_force"] =
          make_ratio(urp_2theta, fr_inf + std::sqrt(fr_inf) + std::sqrt(divf_q));
    }
  }
  return rep;
}

bool split_energy_bound_holds(const IdentityReport& report, double rel_tol) {
  const auto it = report.estimate_ratios.find("energy_vs_split_bound");
  if (it == report.estimate_ratios.end())
    throw std::logic_error("split_energy_bound_holds: report lacks the entry");
  const RatioEntry& e = it->second;
  return e.lhs <= e.rhs + rel_tol * (1.0 + std::abs(e.rhs));
}

}  // namespace ssns
