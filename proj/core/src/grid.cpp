#include "ssns/grid.hpp"

#include <cmath>
#include <cstring>
#include <sstream>
#include <stdexcept>

namespace ssns {

namespace {

// Golub-Welsch: nodes are the eigenvalues of the symmetric tridiagonal matrix
// built from the three-term recurrence of the orthogonal polynomials; the
// weight of node k is mu0 * (first eigenvector component)^2.
void golub_welsch(int npts, const Eigen::VectorXd& diag, const Eigen::VectorXd& offdiag,
                  double mu0, Eigen::VectorXd& t, Eigen::VectorXd& w) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(npts, npts);
  for (int i = 0; i < npts; ++i) J(i, i) = diag(i);
  for (int i = 0; i + 1 < npts; ++i) {
    J(i, i + 1) = offdiag(i);
    J(i + 1, i) = offdiag(i);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  if (es.info() != Eigen::Success) throw std::runtime_error("gauss rule: eigensolver failed");
  t = es.eigenvalues();
  w.resize(npts);
  for (int i = 0; i < npts; ++i) {
    const double v = es.eigenvectors()(0, i);
    w(i) = mu0 * v * v;
  }
}

}  // namespace

void gauss_jacobi(int npts, double a, double b, Eigen::VectorXd& t, Eigen::VectorXd& w) {
  if (npts < 1) throw std::invalid_argument("gauss_jacobi: need at least one node");
  if (a <= -1.0 || b <= -1.0) throw std::invalid_argument("gauss_jacobi: exponents must be > -1");
  Eigen::VectorXd diag(npts), off(std::max(npts - 1, 0));
  const double ab = a + b;
  for (int k = 0; k < npts; ++k) {
    if (k == 0) {
      diag(k) = (b - a) / (ab + 2.0);
    } else {
      const double den = (2.0 * k + ab) * (2.0 * k + ab + 2.0);
      diag(k) = (b * b - a * a) / den;
    }
  }
  for (int k = 1; k < npts; ++k) {
    double num, den;
    if (k == 1) {
      num = 4.0 * (1.0 + a) * (1.0 + b);
      den = (ab + 2.0) * (ab + 2.0) * (ab + 3.0);
    } else {
      num = 4.0 * k * (k + a) * (k + b) * (k + ab);
      den = (2.0 * k + ab) * (2.0 * k + ab) * (2.0 * k + ab + 1.0) * (2.0 * k + ab - 1.0);
    }
    off(k - 1) = std::sqrt(num / den);
  }
  // mu0 = int_{-1}^{1} (1-t)^a (1+t)^b dt = 2^{a+b+1} B(a+1, b+1)
  const double mu0 =
      std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) + std::lgamma(b + 1.0) -
               std::lgamma(ab + 2.0));
  golub_welsch(npts, diag, off, mu0, t, w);
}

void gauss_legendre(int npts, double lo, double hi, Eigen::VectorXd& t, Eigen::VectorXd& w) {
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(npts), off(std::max(npts - 1, 0));
  for (int k = 1; k < npts; ++k) {
    off(k - 1) = k / std::sqrt(4.0 * k * k - 1.0);
  }
  golub_welsch(npts, diag, off, 2.0, t, w);
  const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
  for (int i = 0; i < npts; ++i) {
    t(i) = mid + half * t(i);
    w(i) *= half;
  }
}

double sphere_area(int m) {
  if (m < 0) throw std::invalid_argument("sphere_area: negative dimension");
  const double k = 0.5 * (m + 1);
  return 2.0 * std::pow(M_PI, k) / std::tgamma(k);
}

double ball_volume(int n) {
  if (n < 1) throw std::invalid_argument("ball_volume: dimension must be positive");
  return std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

double Grid::integrate(const Eigen::VectorXd& g) const {
  if (g.size() != size) throw std::invalid_argument("Grid::integrate: profile size mismatch");
  return sphere_prefactor * weights.dot(g);
}

double Grid::interpolate(const Eigen::VectorXd& values, double t) const {
  if (values.size() != size) throw std::invalid_argument("Grid::interpolate: size mismatch");
  // second barycentric form; exact passthrough when t hits a node
  double num = 0.0, den = 0.0;
  for (int k = 0; k < size; ++k) {
    const double d = t - x(k);
    if (std::abs(d) < 1e-14) return values(k);
    const double c = bary_w(k) / d;
    num += c * values(k);
    den += c;
  }
  return num / den;
}

std::uint64_t Grid::checksum() const {
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a 64-bit
  auto mix = [&h](const void* p, std::size_t len) {
    const unsigned char* b = static_cast<const unsigned char*>(p);
    for (std::size_t i = 0; i < len; ++i) {
      h ^= b[i];
      h *= 1099511628211ull;
    }
  };
  std::int64_t dims[2] = {n, size};
  mix(dims, sizeof(dims));
  mix(x.data(), sizeof(double) * x.size());
  mix(weights.data(), sizeof(double) * weights.size());
  return h;
}

std::string Grid::checksum_hex() const {
  std::ostringstream os;
  os << std::hex << checksum();
  return os.str();
}

GridPtr build_grid(int n, int num_nodes) {
  if (n < 4) throw std::invalid_argument("build_grid: dimension must be >= 4");
  if (num_nodes < 8) throw std::invalid_argument("build_grid: need at least 8 nodes");

  auto g = std::make_shared<Grid>();
  g->n = n;
  g->size = num_nodes;

  const double a = 0.5 * (n - 3);
  Eigen::VectorXd t, w;
  gauss_jacobi(num_nodes, a, a, t, w);

  // order by increasing theta, i.e. decreasing x
  g->x.resize(num_nodes);
  g->weights.resize(num_nodes);
  for (int k = 0; k < num_nodes; ++k) {
    g->x(k) = t(num_nodes - 1 - k);
    g->weights(k) = w(num_nodes - 1 - k);
  }
  g->theta = g->x.array().acos();
  g->sin_theta = (1.0 - g->x.array().square()).sqrt();
  g->sphere_prefactor = sphere_area(n - 2);

  // barycentric weights; the factor 2 per difference keeps magnitudes tame
  g->bary_w.resize(num_nodes);
  for (int k = 0; k < num_nodes; ++k) {
    double prod = 1.0;
    for (int j = 0; j < num_nodes; ++j) {
      if (j != k) prod *= 2.0 * (g->x(k) - g->x(j));
    }
    g->bary_w(k) = 1.0 / prod;
  }

  // first and second differentiation matrices (Welfert's formulas)
  auto& D1 = g->d1;
  auto& D2 = g->d2;
  D1.resize(num_nodes, num_nodes);
  D2.resize(num_nodes, num_nodes);
  for (int k = 0; k < num_nodes; ++k) {
    double rowsum = 0.0;
    for (int j = 0; j < num_nodes; ++j) {
      if (j == k) continue;
      D1(k, j) = (g->bary_w(j) / g->bary_w(k)) / (g->x(k) - g->x(j));
      rowsum += D1(k, j);
    }
    D1(k, k) = -rowsum;
  }
  for (int k = 0; k < num_nodes; ++k) {
    double rowsum = 0.0;
    for (int j = 0; j < num_nodes; ++j) {
      if (j == k) continue;
      D2(k, j) = 2.0 * D1(k, j) * (D1(k, k) - 1.0 / (g->x(k) - g->x(j)));
      rowsum += D2(k, j);
    }
    D2(k, k) = -rowsum;
  }

  return g;
}

}  // namespace ssns
