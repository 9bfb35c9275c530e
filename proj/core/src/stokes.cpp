#include "ssns/stokes.hpp"

#include "ssns/log.hpp"
#include "ssns/sphere_calculus.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace ssns {

StokesSystem::StokesSystem(GridPtr grid) : grid_(std::move(grid)) {
  if (!grid_) throw std::invalid_argument("StokesSystem: null grid");
  const Grid& g = *grid_;
  const int m = g.size;
  const int n = g.n;
  const Eigen::MatrixXd L = laplace_beltrami_matrix(g);
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(m, m);
  const Eigen::VectorXd x = g.x;
  const Eigen::VectorXd s2 = (1.0 - x.array().square()).matrix();

  const Eigen::MatrixXd stokes_axis = -L + (n - 3.0) * I;

  m_.setZero(3 * m, 3 * m);
  // axis momentum row
  m_.block(0, 0, m, m) = stokes_axis;
  m_.block(0, m, m, m) = -2.0 * g.d1;
  m_.block(0, 2 * m, m, m) = g.d1;
  // radial momentum row (sigma projection); the +-2xB' terms cancel exactly
  m_.block(m, 0, m, m) = x.asDiagonal() * stokes_axis;
  m_.block(m, m, m, m) = -L + (2.0 * n - 4.0) * I;
  m_.block(m, 2 * m, m, m) = -2.0 * I;
  // divergence constraint row
  m_.block(2 * m, 0, m, m) = s2.asDiagonal() * g.d1 - Eigen::MatrixXd(x.asDiagonal());
  m_.block(2 * m, m, m, m) = (n - 2.0) * I;

  row_scale_ = m_.cwiseAbs().rowwise().maxCoeff().cwiseMax(1.0);
  lu_.compute(row_scale_.cwiseInverse().asDiagonal() * m_);
  rcond_ = lu_.rcond();
  if (!(rcond_ > 0.0) || !std::isfinite(rcond_))
    throw std::runtime_error("StokesSystem: singular assembly (rcond " + std::to_string(rcond_) +
                             ")");
  log(LogLevel::debug, "stokes", "assembled n=", n, " nodes=", m, " rcond=", rcond_);
}

Eigen::VectorXd StokesSystem::pack(const AxisymField& u, const ScalarSphereField& p) const {
  const int m = grid_->size;
  Eigen::VectorXd z(3 * m);
  z.segment(0, m) = u.alpha;
  z.segment(m, m) = u.beta;
  z.segment(2 * m, m) = p.values;
  return z;
}

std::pair<AxisymField, ScalarSphereField> StokesSystem::unpack(const Eigen::VectorXd& z) const {
  const int m = grid_->size;
  if (z.size() != 3 * m) throw std::invalid_argument("StokesSystem::unpack: size mismatch");
  return {AxisymField(grid_, z.segment(0, m), z.segment(m, m)),
          ScalarSphereField(grid_, z.segment(2 * m, m))};
}

Eigen::VectorXd StokesSystem::apply(const AxisymField& u, const ScalarSphereField& p) const {
  return m_ * pack(u, p);
}

Eigen::VectorXd StokesSystem::rhs(const ForceSpec& f, double lambda) const {
  if (f.grid != grid_) throw std::invalid_argument("StokesSystem::rhs: grid mismatch");
  const int m = grid_->size;
  Eigen::VectorXd b = Eigen::VectorXd::Zero(3 * m);
  b.segment(0, m) = lambda * f.phi_axis;
  b.segment(m, m) = lambda * f.f_r;
  return b;
}

Eigen::VectorXd StokesSystem::solve(const Eigen::VectorXd& rhs) const {
  if (rhs.size() != m_.rows()) throw std::invalid_argument("StokesSystem::solve: size mismatch");
  Eigen::VectorXd z = lu_.solve(rhs.cwiseQuotient(row_scale_));
  z += lu_.solve((rhs - m_ * z).cwiseQuotient(row_scale_));  // one refinement round
  return z;
}

double StokesSystem::smallest_singular_value() const {
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m_);
  return svd.singularValues().tail(1)(0);
}

StokesSystem assemble_stokes(GridPtr grid) { return StokesSystem(std::move(grid)); }

StokesSolution solve_stokes(const StokesSystem& sys, const ForceSpec& f, double lambda,
                            bool mean_zero_pressure) {
  const Eigen::VectorXd b = sys.rhs(f, lambda);
  const Eigen::VectorXd z = sys.solve(b);
  auto [u, p] = sys.unpack(z);

  StokesSolution out;
  const Eigen::VectorXd& rs = sys.row_scales();
  out.residual_norm = (sys.apply(z) - b).cwiseQuotient(rs).lpNorm<Eigen::Infinity>() /
                      std::max(1.0, b.cwiseQuotient(rs).lpNorm<Eigen::Infinity>());
  out.rcond_estimate = sys.rcond();
  if (mean_zero_pressure) {
    const double area = sys.grid()->integrate(Eigen::VectorXd::Ones(sys.grid()->size));
    out.gauge_shift = sys.grid()->integrate(p.values) / area;
    p.values.array() -= out.gauge_shift;
    log(LogLevel::info, "stokes", "pressure gauged to zero mean, shift=", out.gauge_shift);
  }
  out.velocity = std::move(u);
  out.pressure = std::move(p);
  return out;
}

Eigen::VectorXd advection_rhs(const StokesSystem& sys, const AxisymField& v) {
  if (v.grid != sys.grid()) throw std::invalid_argument("advection_rhs: grid mismatch");
  const AdvectionProfiles adv = advection_cartesian(v);
  const int m = sys.grid()->size;
  Eigen::VectorXd b = Eigen::VectorXd::Zero(3 * m);
  b.segment(0, m) = adv.n_axis;
  b.segment(m, m) = (sys.grid()->x.array() * adv.n_axis.array() + adv.n_beta.array()).matrix();
  return b;
}

AxisymField picard_map(const StokesSystem& sys, const AxisymField& v, const ForceSpec& f,
                       double lambda) {
  const Eigen::VectorXd b = sys.rhs(f, lambda) - advection_rhs(sys, v);
  auto [u, p] = sys.unpack(sys.solve(b));
  (void)p;
  return u;
}

Eigen::MatrixXd green_tensor(const Eigen::VectorXd& x, int n) {
  if (n < 3) throw std::invalid_argument("green_tensor: n >= 3 required");
  if (x.size() != n) throw std::invalid_argument("green_tensor: point dimension != n");
  const double r2 = x.squaredNorm();
  if (r2 == 0.0) throw std::invalid_argument("green_tensor: x = 0");
  const double r = std::sqrt(r2);
  const double omega_n = ball_volume(n);
  const double c = 1.0 / (2.0 * n * omega_n);
  Eigen::MatrixXd g = (c / std::pow(r, n)) * (x * x.transpose());
  g.diagonal().array() += c / ((n - 2.0) * std::pow(r, n - 2.0));
  return g;
}

ScalarSphereField recover_pressure(const AxisymField& u, const ForceSpec& f) {
  if (u.grid != f.grid) throw std::invalid_argument("recover_pressure: grid mismatch");
  const Grid& g = *u.grid;
  const int m = g.size;
  const int n = g.n;

  // RHS profile: trace((du)^2) - r^4 div f at r = 1.
  Eigen::VectorXd rhs(m);
  for (int k = 0; k < m; ++k) {
    const AmbientSample s = ambient_sample(g, u.alpha, u.beta, k, -1);
    rhs(k) = s.du.cwiseProduct(s.du.transpose()).sum();
  }
  rhs -= force_divergence_profile(f);

  const Eigen::MatrixXd op =
      -laplace_beltrami_matrix(g) + (2.0 * n - 8.0) * Eigen::MatrixXd::Identity(m, m);
  if (n >= 5) {
    return ScalarSphereField(u.grid, op.partialPivLu().solve(rhs));
  }

  // n = 4: constants are in the kernel; bordered solve selects the mean-zero
  // representative and the multiplier absorbs any quadrature-mean defect.
  Eigen::MatrixXd bordered = Eigen::MatrixXd::Zero(m + 1, m + 1);
  bordered.topLeftCorner(m, m) = op;
  bordered.topRightCorner(m, 1) = Eigen::VectorXd::Ones(m);
  bordered.bottomLeftCorner(1, m) = g.weights.transpose();
  Eigen::VectorXd brhs(m + 1);
  brhs.head(m) = rhs;
  brhs(m) = 0.0;
  const Eigen::VectorXd sol = bordered.partialPivLu().solve(brhs);
  log(LogLevel::info, "stokes", "recover_pressure n=4 gauge: mean pinned to 0, multiplier=",
      sol(m));
  return ScalarSphereField(u.grid, sol.head(m));
}

}  // namespace ssns
