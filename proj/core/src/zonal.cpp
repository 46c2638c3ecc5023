#include "umbilic/zonal.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace umbilic {

namespace {

// Neumaier compensated dot product; fixed evaluation order so repeated runs
// are bit-identical.
double compensated_dot(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  double sum = 0.0, comp = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const double term = a[i] * b[i];
    const double t = sum + term;
    if (std::abs(sum) >= std::abs(term))
      comp += (sum - t) + term;
    else
      comp += (term - t) + sum;
    sum = t;
  }
  return sum + comp;
}

}  // namespace

ZonalGrid::ZonalGrid(int n, int N) : n_(n), N_(N) {
  if (n < 2) throw std::invalid_argument("ZonalGrid: require n >= 2");
  if (N < 8) throw std::invalid_argument("ZonalGrid: require N >= 8");

  const double s = 0.5 * (n - 2);  // Jacobi exponent alpha = beta = s

  // Golub-Welsch: nodes and weights from the symmetric tridiagonal Jacobi
  // matrix of the monic orthogonal polynomials for (1-x^2)^s dx.
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(N, N);
  for (int k = 1; k < N; ++k) {
    const double bk = k * (k + 2.0 * s) / ((2.0 * k + 2.0 * s - 1.0) * (2.0 * k + 2.0 * s + 1.0));
    const double off = std::sqrt(bk);
    J(k, k - 1) = off;
    J(k - 1, k) = off;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(J);
  if (eig.info() != Eigen::Success) throw std::runtime_error("ZonalGrid: eigensolver failed");

  const double beta0 = std::exp(0.5 * std::log(M_PI) + std::lgamma(s + 1.0) - std::lgamma(s + 1.5));
  nodes_ = eig.eigenvalues();
  weights_.resize(N);
  for (int i = 0; i < N; ++i) {
    const double v0 = eig.eigenvectors()(0, i);
    weights_[i] = beta0 * v0 * v0;
    if (!(weights_[i] > 0.0)) throw std::runtime_error("ZonalGrid: nonpositive quadrature weight");
  }

  sphere_factor_ = 2.0 * std::exp(0.5 * n * std::log(M_PI) - std::lgamma(0.5 * n));

  sin_theta_ = (1.0 - nodes_.array().square()).sqrt();
  cot_theta_ = nodes_.array() / sin_theta_.array();

  // Gegenbauer basis (parameter (n-1)/2, value 1 at x = 1) at the nodes.
  basis_.resize(N, N);
  basis_.col(0).setOnes();
  basis_.col(1) = nodes_;
  for (int m = 1; m + 1 < N; ++m) {
    basis_.col(m + 1) =
        ((2.0 * m + n - 1.0) * nodes_.array() * basis_.col(m).array() - m * basis_.col(m - 1).array()) /
        (m + n - 1.0);
  }

  // Barycentric differentiation matrices. Weights and entries are formed in
  // long double; the node range keeps the direct product far from underflow.
  // D2 uses Welfert's relation; both diagonals use the negative-sum rule.
  std::vector<long double> lam(N);
  for (int i = 0; i < N; ++i) {
    long double p = 1.0L;
    for (int j = 0; j < N; ++j)
      if (j != i) p *= static_cast<long double>(nodes_[i]) - static_cast<long double>(nodes_[j]);
    lam[i] = 1.0L / p;
  }
  diff_x_.resize(N, N);
  diff_xx_.resize(N, N);
  for (int i = 0; i < N; ++i) {
    long double rowsum = 0.0L;
    for (int j = 0; j < N; ++j) {
      if (i == j) continue;
      const long double v =
          (lam[j] / lam[i]) / (static_cast<long double>(nodes_[i]) - static_cast<long double>(nodes_[j]));
      diff_x_(i, j) = static_cast<double>(v);
      rowsum += v;
    }
    diff_x_(i, i) = static_cast<double>(-rowsum);
  }
  for (int i = 0; i < N; ++i) {
    long double rowsum = 0.0L;
    for (int j = 0; j < N; ++j) {
      if (i == j) continue;
      const long double v =
          2.0L * static_cast<long double>(diff_x_(i, j)) *
          (static_cast<long double>(diff_x_(i, i)) -
           1.0L / (static_cast<long double>(nodes_[i]) - static_cast<long double>(nodes_[j])));
      diff_xx_(i, j) = static_cast<double>(v);
      rowsum += v;
    }
    diff_xx_(i, i) = static_cast<double>(-rowsum);
  }
}

double ZonalGrid::integrate_weight(const Eigen::VectorXd& values) const {
  return compensated_dot(weights_, values);
}

double ZonalGrid::integrate(const Eigen::VectorXd& values) const {
  return sphere_factor_ * integrate_weight(values);
}

Eigen::VectorXd ZonalGrid::deriv_x(const Eigen::VectorXd& values) const { return diff_x_ * values; }

Eigen::VectorXd ZonalGrid::deriv_theta(const Eigen::VectorXd& values) const {
  return (-sin_theta_.array() * (diff_x_ * values).array()).matrix();
}

Eigen::VectorXd ZonalGrid::second_theta(const Eigen::VectorXd& values) const {
  const Eigen::VectorXd vx = diff_x_ * values;
  const Eigen::VectorXd vxx = diff_xx_ * values;
  return ((1.0 - nodes_.array().square()) * vxx.array() - nodes_.array() * vx.array()).matrix();
}

Eigen::VectorXd ZonalGrid::laplace_unit(const Eigen::VectorXd& values) const {
  const Eigen::VectorXd vx = diff_x_ * values;
  const Eigen::VectorXd vxx = diff_xx_ * values;
  return ((1.0 - nodes_.array().square()) * vxx.array() - n_ * nodes_.array() * vx.array()).matrix();
}

Eigen::VectorXd ZonalGrid::basis_column(int m) const {
  if (m < 0 || m >= N_) throw std::invalid_argument("basis_column: degree out of range");
  return basis_.col(m);
}

std::shared_ptr<const ZonalGrid> shared_grid(int n, int N) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const ZonalGrid>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{n, N}];
  if (!slot) slot = std::make_shared<const ZonalGrid>(n, N);
  return slot;
}

ZonalFunction zonal_harmonic(const ZonalGrid& grid, int k) {
  if (k < 1 || k > grid.size() - 2)
    throw std::invalid_argument("zonal_harmonic: require 1 <= k <= N-2, got k = " + std::to_string(k));
  return {&grid, grid.basis_column(k)};
}

ZonalJet zonal_harmonic_jet(const ZonalGrid& grid, int k) {
  if (k < 1 || k > grid.size() - 2)
    throw std::invalid_argument("zonal_harmonic_jet: require 1 <= k <= N-2");
  const int n = grid.dim();
  const Eigen::ArrayXd x = grid.nodes().array();
  const Eigen::ArrayXd s = grid.sin_theta().array();
  const Eigen::ArrayXd f = grid.basis_column(k).array();
  const Eigen::ArrayXd fprev = grid.basis_column(k - 1).array();
  // (1-x^2) C_k' = k (C_{k-1} - x C_k) for the value-1-at-1 normalization.
  const Eigen::ArrayXd fx = k * (fprev - x * f) / (1.0 - x.square());
  // f_theta = -sin(theta) f_x; f_thetatheta = (n-1) x f_x - k(k+n-1) f.
  ZonalJet jet;
  jet.f = f.matrix();
  jet.f_theta = (-s * fx).matrix();
  jet.f_theta2 = ((n - 1.0) * x * fx - static_cast<double>(k) * (k + n - 1.0) * f).matrix();
  return jet;
}

ZonalJet constant_jet(const ZonalGrid& grid, double value) {
  ZonalJet jet;
  jet.f = Eigen::VectorXd::Constant(grid.size(), value);
  jet.f_theta = Eigen::VectorXd::Zero(grid.size());
  jet.f_theta2 = Eigen::VectorXd::Zero(grid.size());
  return jet;
}

ZonalJet numerical_jet(const ZonalGrid& grid, const Eigen::VectorXd& values) {
  ZonalJet jet;
  jet.f = values;
  jet.f_theta = grid.deriv_theta(values);
  jet.f_theta2 = grid.second_theta(values);
  return jet;
}

ZonalFunction sphere_laplacian(const ZonalFunction& f, double radius_sn) {
  if (f.grid == nullptr) throw std::invalid_argument("sphere_laplacian: unbound ZonalFunction");
  if (!(radius_sn > 0.0)) throw std::invalid_argument("sphere_laplacian: require radius_sn > 0");
  return {f.grid, (f.grid->laplace_unit(f.values) / (radius_sn * radius_sn)).eval()};
}

double sphere_integral(const ZonalGrid& grid, const Eigen::VectorXd& values, double radius_sn) {
  return std::pow(radius_sn, grid.dim()) * grid.integrate(values);
}

double bochner_traceless_hessian(const ZonalFunction& f, const GeodesicSphere& sphere) {
  const ZonalGrid& grid = *f.grid;
  if (grid.dim() != sphere.n) throw std::invalid_argument("bochner_traceless_hessian: dimension mismatch");

  const double area = sphere_integral(grid, Eigen::VectorXd::Ones(grid.size()), sphere.sn);
  const double mean_int = sphere_integral(grid, f.values, sphere.sn);
  const double l2 = std::sqrt(sphere_integral(grid, f.values.array().square().matrix(), sphere.sn));
  if (std::abs(mean_int) > 1e-10 * l2 * std::sqrt(area))
    throw std::invalid_argument("bochner_traceless_hessian: input must have zero mean");

  const int n = sphere.n;
  const Eigen::VectorXd lap = sphere_laplacian(f, sphere.sn).values;
  const double int_lap2 = sphere_integral(grid, lap.array().square().matrix(), sphere.sn);
  const double int_flap = sphere_integral(grid, (f.values.array() * lap.array()).matrix(), sphere.sn);
  return (n - 1.0) / n * int_lap2 + (n - 1.0) / (sphere.sn * sphere.sn) * int_flap;
}

}  // namespace umbilic
