#pragma once

#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "umbilic/spaceform.hpp"
#include "umbilic/zonal.hpp"

namespace umbilic {

/// Zonal radial graph rho(theta) > 0 over S^n in the space form of
/// curvature c. When the profile has closed-form theta-derivatives (e.g.
/// rho = a + t f_k with f_k a zonal harmonic) they may be supplied; otherwise
/// the grid's collocation operators are used.
struct ZonalHypersurface {
  int n = 0;
  double c = 0.0;
  const ZonalGrid* grid = nullptr;
  Eigen::VectorXd rho;
  std::optional<Eigen::VectorXd> rho_theta;
  std::optional<Eigen::VectorXd> rho_theta2;
};

/// Pointwise curvature data of a zonal hypersurface. kappa_mer is the
/// meridional principal curvature (multiplicity 1), kappa_az the azimuthal
/// one (multiplicity n-1), W = sqrt(rho_theta^2 + sn_c(rho)^2) and
/// area_density = W sn_c(rho)^{n-1}, so that
/// dA = area_density (1-x^2)^{(n-2)/2} dx |S^{n-1}|.
struct ShapeField {
  int n = 0;
  double c = 0.0;
  const ZonalGrid* grid = nullptr;
  Eigen::VectorXd kappa_mer, kappa_az, H, W, area_density;
};

/// Principal curvatures of the radial graph (outward normal; geodesic
/// spheres of small radius have positive curvature):
///   kappa_mer = [-sn(rho) rho'' + 2 cn(rho) rho'^2 + sn(rho)^2 cn(rho)] / W^3
///   kappa_az  = [cn(rho) - rho' cot(theta) / sn(rho)] / W
/// with ' = d/dtheta. Throws std::domain_error on invalid rho or W ~ 0.
ShapeField shape_field(const ZonalHypersurface& surface);

/// Global (min, max) over nodes and principal directions of the Ricci
/// eigenvalues (n-1)c + H kappa - kappa^2 (Gauss equation in a space form).
std::pair<double, double> ricci_range(const ShapeField& shape);

/// Node values of s_r = sigma_r of the principal-curvature spectrum.
Eigen::VectorXd symmetric_function_field(const ShapeField& shape, int r);

/// Every integral functional of the stability inequalities, over one surface.
/// All averages and integrals use the same quadrature. Entries per r follow
/// the order of r_list.
struct FunctionalReport {
  int n = 0;
  double volume = 0.0;
  double mean_H = 0.0;
  double dev_H = 0.0;        // int (H - mean_H)^2
  double norm_Aring = 0.0;   // int |A - (H/n) g|^2
  double norm_A_meanH = 0.0; // int |A - (mean_H/n) g|^2 (computed directly)
  double min_ricci = 0.0;
  double max_ricci = 0.0;
  double max_scalar_residual = 0.0;  // worst node residual of tr Ric = n(n-1)c + 2 s_2 (relative)
  std::vector<int> r_list;
  std::vector<double> mean_sr;
  std::vector<double> dev_sr;         // int (s_r - mean_sr)^2
  std::vector<double> norm_Pring;     // int |P_r - ((n-r) s_r / n) g|^2
  std::vector<double> norm_P_meansr;  // int |P_r - ((n-r) mean_sr / n) g|^2 (direct)
};

/// Requires r_list within 1..n-1.
FunctionalReport functional_report(const ShapeField& shape, const std::vector<int>& r_list);

/// Margins of the stability inequalities; nonnegative whenever the surface
/// has nonnegative Ricci curvature:
///   margin_H = n/(n-1) norm_Aring - dev_H
///   margin_r = n(n-1) norm_Pring - (n-r)^2 dev_sr
struct MarginTable {
  double margin_H = 0.0;
  double min_ricci = 0.0;
  std::vector<int> r_list;
  std::vector<double> margin_r;
};

MarginTable inequality_margins(const FunctionalReport& report);

}  // namespace umbilic
