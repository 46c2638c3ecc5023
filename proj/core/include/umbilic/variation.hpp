#pragma once

#include <string>
#include <vector>

#include "umbilic/geometry.hpp"
#include "umbilic/spaceform.hpp"
#include "umbilic/zonal.hpp"

namespace umbilic {

/// Which defect functional a second-variation computation refers to:
///   MeanCurvature:  F = C^2 int |A - (H/n) g|^2   - int (H - mean_H)^2
///   Newton:         G = C^2 int |P_r - tr/n g|^2  - int (s_r - mean_sr)^2
enum class DefectKind { MeanCurvature, Newton };

/// A radial deformation experiment around a geodesic sphere: profile
/// rho = a + t f_k with f_k the degree-k zonal harmonic (sup-normalized),
/// sampled on the geometric amplitude schedule t_j = t0 2^{-j}, j = 0..levels.
struct DeformationSpec {
  GeodesicSphere sphere;
  int k = 2;
  double t0 = 0.0;  // <= 0 selects default_amplitude
  int levels = 6;
  std::vector<int> r_list{1};
};

/// Amplitude keeping the quadratic regime across harmonic degrees:
/// 1e-2 a / max(1, k^2/10). The curvature response scales like t k^2.
double default_amplitude(const GeodesicSphere& sphere, int k);

/// rho = a + t * jet.f with the jet's theta-derivatives carried along.
/// Throws std::domain_error when the radius range is violated.
ZonalHypersurface radial_surface(const ZonalGrid& grid, const GeodesicSphere& sphere, const ZonalJet& jet,
                                 double t);

/// Value of the defect functional for a computed report. r_index indexes
/// report.r_list (ignored for MeanCurvature).
double defect_functional(const FunctionalReport& report, DefectKind kind, double C, int r_index = 0);

/// Closed-form limit of the deviation/defect ratio along rho = a + t f_k as
/// t -> 0:
///   R(n, r, k) = [n(n-1)/(n-r)^2] (k-1)(k+n) / (k(k+n-1))
/// (r = 1 is the mean-curvature case). Independent of c and a; increasing in
/// k with supremum n(n-1)/(n-r)^2.
double predicted_ratio_limit(int n, int r, int k);

/// Closed-form (1/2) d^2/dt^2 of the defect functional at the sphere, per
/// unit int f^2, for f the degree-k eigenfunction:
///   MeanCurvature: (C^2(n-1)/n - 1) xi^2 - (C^2(n-1)/sn^2 - 2 n omega) xi - n^2 omega^2
///   Newton:        lambda^{2(r-1)} C(n-1,r-1)^2 (alpha xi^2 - beta xi + gamma),
///     alpha = C^2 (n-r)^2 / (n(n-1)) - 1,
///     beta  = C^2 (n-r)^2 / (sn^2 (n-1)) - 2 n (lambda^2 + c),
///     gamma = -n^2 (lambda^2 + c)^2.
double predicted_second_variation(DefectKind kind, double C, const GeodesicSphere& sphere, int k, int r);

/// Central-difference second variation along the radial path, Richardson
/// extrapolated over the amplitude schedule. estimate approximates
/// (1/2) d^2/dt^2 at t = 0 (the first variation vanishes there);
/// per_unit_f2 divides by int f^2 for comparison with the closed form.
struct SecondVariationEstimate {
  double estimate = 0.0;
  double per_unit_f2 = 0.0;
  double f2_integral = 0.0;
  double order = 0.0;  // observed self-convergence order; +inf below floor
  bool converged = false;
};

SecondVariationEstimate numeric_second_variation(const ZonalGrid& grid, const GeodesicSphere& sphere,
                                                 DefectKind kind, double C, int k, int r, double t0 = 0.0,
                                                 int levels = 6);

/// Ratio curves dev/defect per r over the amplitude schedule (symmetrized
/// over +-t so the expansion is even in t), their Richardson limits, the
/// predicted closed forms and the Ricci minimum per amplitude.
struct SharpnessResult {
  int n = 0;
  double c = 0.0, a = 0.0;
  int k = 0;
  std::vector<int> r_list;
  std::vector<double> t;                   // per level
  std::vector<double> min_ricci;           // per level, min over +-t
  std::vector<std::vector<double>> ratio;  // [r][level]
  std::vector<double> limit;               // per r, extrapolated
  std::vector<double> predicted;           // per r
  std::vector<double> rel_err;             // per r
  bool ricci_positive = false;             // min over all levels > 0
};

SharpnessResult sharpness_extrapolate(const ZonalGrid& grid, const DeformationSpec& spec);

/// One finite-difference check of an evolution identity at the sphere.
/// Residuals are relative to a line-specific scale; order is
/// log2(residual_h / residual_h2) with +inf when both sit below the
/// rounding floor; extrapolated_residual applies one Richardson step.
struct EvolutionLine {
  std::string id;  // dvol, dH, ds_r, aring_rate, pring_rate, dHbar, dsbar_r
  int r = 0;       // 0 when not applicable
  double h = 0.0;
  double residual_h = 0.0;
  double residual_h2 = 0.0;
  double order = 0.0;
  double extrapolated_residual = 0.0;
  bool converged = false;  // order >= 1.9 or below floor
};

/// Verifies, by central differences along rho = a + t f from the geodesic
/// sphere (radial velocity there is exactly f nu):
///   dvol:       d/dt Vol        -> int f H
///   dH:         d/dt H (node)   -> -Lap f - |A|^2 f - n c f
///   ds_r:       d/dt s_r (node) -> -C(n-1,r-1) lambda^{r-1} (Lap f + n lambda^2 f + n c f)
///   aring_rate: int|A - (H/n)g|^2 / t^2 -> int |traceless Hess f|^2
///   pring_rate: int|P_r - ... g|^2 / t^2 -> lambda^{2(r-1)} C(n-2,r-1)^2 int |traceless Hess f|^2
///   dHbar:      d/dt mean_H     -> mean of the dH target
///   dsbar_r:    d/dt mean_sr    -> C(n-1,r-1) lambda^{r-1} times the dHbar target
/// The quadratic-rate lines require mean-zero f and are skipped otherwise.
std::vector<EvolutionLine> evolution_residuals(const ZonalGrid& grid, const GeodesicSphere& sphere,
                                               const ZonalJet& f, const std::vector<int>& r_list, double h);

/// d/dt s_r at the sphere from the general trace-form evolution identity,
/// specialized at the umbilic point (P_{r-1} is then scalar). Must agree
/// identically with the compact ds_r target above; tests assert it.
Eigen::VectorXd ds_r_trace_form(const ZonalGrid& grid, const GeodesicSphere& sphere, const ZonalJet& f,
                                int r);

}  // namespace umbilic
