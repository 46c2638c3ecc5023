#pragma once

#include <Eigen/Dense>
#include <memory>

#include "umbilic/spaceform.hpp"

namespace umbilic {

/// Collocation grid for zonal (rotationally symmetric) fields on S^n.
///
/// Zonal functions depend only on the polar angle theta; in x = cos(theta)
/// the surface measure reduces to |S^{n-1}| (1-x^2)^{(n-2)/2} dx, so the
/// natural grid is Gauss-Jacobi with alpha = beta = (n-2)/2. All nodes are
/// interior: nothing is ever evaluated at the poles.
///
/// Differentiation uses barycentric collocation operators (weights and
/// entries accumulated in long double; second derivative by Welfert's
/// relation), exact on polynomials of degree < N up to rounding. Zonal
/// Laplace eigenfunctions are the ultraspherical (Gegenbauer) polynomials
/// with parameter (n-1)/2, held as a basis table normalized to 1 at x = 1.
class ZonalGrid {
 public:
  /// Throws std::invalid_argument for n < 2 or N < 8.
  ZonalGrid(int n, int N);

  int dim() const { return n_; }
  int size() const { return N_; }

  const Eigen::VectorXd& nodes() const { return nodes_; }
  const Eigen::VectorXd& weights() const { return weights_; }
  const Eigen::VectorXd& sin_theta() const { return sin_theta_; }
  const Eigen::VectorXd& cot_theta() const { return cot_theta_; }

  /// |S^{n-1}| = 2 pi^{n/2} / Gamma(n/2).
  double sphere_factor() const { return sphere_factor_; }

  /// d/dx collocation operator (exact on polynomials of degree < N).
  const Eigen::MatrixXd& diff() const { return diff_x_; }

  /// Quadrature against the bare weight (1-x^2)^{(n-2)/2} dx.
  double integrate_weight(const Eigen::VectorXd& values) const;

  /// Integral over S^n (unit radius): sphere_factor * integrate_weight.
  double integrate(const Eigen::VectorXd& values) const;

  Eigen::VectorXd deriv_x(const Eigen::VectorXd& values) const;

  /// d/dtheta = -sqrt(1-x^2) d/dx.
  Eigen::VectorXd deriv_theta(const Eigen::VectorXd& values) const;

  /// d^2/dtheta^2 = (1-x^2) d^2/dx^2 - x d/dx.
  Eigen::VectorXd second_theta(const Eigen::VectorXd& values) const;

  /// Laplace-Beltrami operator of the unit S^n on zonal fields:
  /// (1-x^2) f_xx - n x f_x.
  Eigen::VectorXd laplace_unit(const Eigen::VectorXd& values) const;

  /// Values of the degree-m basis polynomial at the nodes (m < N).
  Eigen::VectorXd basis_column(int m) const;

 private:
  int n_ = 0;
  int N_ = 0;
  double sphere_factor_ = 0.0;
  Eigen::VectorXd nodes_, weights_, sin_theta_, cot_theta_;
  Eigen::MatrixXd basis_;    // basis_(i, m) = C_m(x_i) / C_m(1)
  Eigen::MatrixXd diff_x_;   // barycentric d/dx
  Eigen::MatrixXd diff_xx_;  // barycentric d^2/dx^2 (Welfert)
};

/// Shared, cached grids keyed by (n, N); thread-safe.
std::shared_ptr<const ZonalGrid> shared_grid(int n, int N);

/// A scalar field sampled at the nodes of a ZonalGrid.
struct ZonalFunction {
  const ZonalGrid* grid = nullptr;
  Eigen::VectorXd values;
};

/// Zonal Laplace eigenfunction of degree k (Gegenbauer polynomial with
/// parameter (n-1)/2, normalized to 1 at the pole x = 1):
/// lap_unit f_k = -k(k+n-1) f_k. Requires 1 <= k <= N-2.
ZonalFunction zonal_harmonic(const ZonalGrid& grid, int k);

/// A zonal field together with its first two theta-derivatives.
struct ZonalJet {
  Eigen::VectorXd f;
  Eigen::VectorXd f_theta;
  Eigen::VectorXd f_theta2;
};

/// Jet of the degree-k harmonic with derivatives from the closed
/// three-term relations (no differentiation matrix, machine precision).
ZonalJet zonal_harmonic_jet(const ZonalGrid& grid, int k);

/// Jet of a constant field.
ZonalJet constant_jet(const ZonalGrid& grid, double value);

/// Jet of general node data, derivatives via the collocation operator.
ZonalJet numerical_jet(const ZonalGrid& grid, const Eigen::VectorXd& values);

/// Laplace-Beltrami operator of the round sphere of radius radius_sn:
/// (1/radius_sn^2) * laplace_unit.
ZonalFunction sphere_laplacian(const ZonalFunction& f, double radius_sn);

/// Integral over the geodesic sphere of radius sn (metric sn^2 * eta):
/// |S^{n-1}| sn^n sum_i w_i v_i.
double sphere_integral(const ZonalGrid& grid, const Eigen::VectorXd& values, double radius_sn);

/// Integral of the squared traceless Hessian of a mean-zero field f on the
/// geodesic sphere, reduced through the Bochner identity to spectral data:
///   (n-1)/n * int (Lap f)^2 + (n-1)/sn^2 * int f Lap f.
/// Throws std::invalid_argument when the mean of f is not zero (tolerance
/// 1e-10 relative to the L^2 norm).
double bochner_traceless_hessian(const ZonalFunction& f, const GeodesicSphere& sphere);

}  // namespace umbilic
