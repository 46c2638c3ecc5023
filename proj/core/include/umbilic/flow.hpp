#pragma once

#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "umbilic/geometry.hpp"
#include "umbilic/spaceform.hpp"
#include "umbilic/zonal.hpp"

namespace umbilic {

/// Height u over the base geodesic sphere at flow time t; the surface is the
/// radial graph rho = a + u.
struct FlowState {
  GeodesicSphere sphere;
  const ZonalGrid* grid = nullptr;
  Eigen::VectorXd u;
  double t = 0.0;
};

/// Raised when the flow leaves the valid radius range; carries the time of
/// the violation.
class FlowAbort : public std::runtime_error {
 public:
  FlowAbort(double time, const std::string& what) : std::runtime_error(what), time_(time) {}
  double time() const { return time_; }

 private:
  double time_;
};

/// Integrates the zonal graph form of the prescribed-normal-speed equation
///   du/dt = f(theta) sqrt(1 + u_theta^2 / sn_c(a+u)^2),   u(., 0) = 0,
/// with the classical fourth-order one-step method at fixed step dt > 0
/// (spatial derivatives spectral). T may be negative. Returns the state
/// after every step, starting with t = 0.
std::vector<FlowState> integrate_normal_flow(const ZonalGrid& grid, const GeodesicSphere& sphere,
                                             const Eigen::VectorXd& f, double T, double dt);

/// Conservative step bound: 0.1 * (min node spacing in arclength) / max|f|.
double suggested_dt(const ZonalGrid& grid, const GeodesicSphere& sphere, const Eigen::VectorXd& f);

/// The flowed surface rho = a + u (derivatives via the collocation operators).
ZonalHypersurface flow_surface(const FlowState& state);

/// Functional reports of the flow surface at time t versus the straight
/// radial path rho = a + t f_k, with the absolute differences of every
/// defect ingredient. Both second-order jets at t = 0 coincide, so each
/// difference divided by t^2 tends to zero.
struct FlowComparison {
  double t = 0.0;
  FunctionalReport flow_report;
  FunctionalReport radial_report;
  double d_norm_Aring = 0.0;
  double d_dev_H = 0.0;
  std::vector<int> r_list;
  std::vector<double> d_norm_Pring;
  std::vector<double> d_dev_sr;
};

FlowComparison flow_vs_radial(const ZonalGrid& grid, const GeodesicSphere& sphere, int k, double t,
                              double dt, const std::vector<int>& r_list);

}  // namespace umbilic
