#include "umbilic/flow.hpp"

#include <cmath>

#include "umbilic/variation.hpp"

namespace umbilic {

namespace {

Eigen::VectorXd flow_rhs(const ZonalGrid& grid, const GeodesicSphere& sphere, const Eigen::VectorXd& f,
                         const Eigen::VectorXd& u, double t) {
  const int N = grid.size();
  const Eigen::VectorXd u_theta = grid.deriv_theta(u);
  Eigen::VectorXd rhs(N);
  const double rho_max = max_radius(sphere.c);
  for (int i = 0; i < N; ++i) {
    const double rho = sphere.a + u[i];
    if (!(rho > 0.0) || !(rho < rho_max))
      throw FlowAbort(t, "integrate_normal_flow: radius left the valid range at t = " + std::to_string(t));
    const double sn = sn_cn(sphere.c, rho).sn;
    rhs[i] = f[i] * std::sqrt(1.0 + u_theta[i] * u_theta[i] / (sn * sn));
  }
  return rhs;
}

}  // namespace

std::vector<FlowState> integrate_normal_flow(const ZonalGrid& grid, const GeodesicSphere& sphere,
                                             const Eigen::VectorXd& f, double T, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("integrate_normal_flow: require dt > 0");
  if (f.size() != grid.size()) throw std::invalid_argument("integrate_normal_flow: size mismatch");

  const int steps = T == 0.0 ? 0 : static_cast<int>(std::ceil(std::abs(T) / dt - 1e-12));
  const double step = steps == 0 ? 0.0 : T / steps;

  std::vector<FlowState> trajectory;
  trajectory.reserve(steps + 1);
  Eigen::VectorXd u = Eigen::VectorXd::Zero(grid.size());
  trajectory.push_back({sphere, &grid, u, 0.0});

  for (int m = 0; m < steps; ++m) {
    const double t = m * step;
    const Eigen::VectorXd k1 = flow_rhs(grid, sphere, f, u, t);
    const Eigen::VectorXd k2 = flow_rhs(grid, sphere, f, u + 0.5 * step * k1, t + 0.5 * step);
    const Eigen::VectorXd k3 = flow_rhs(grid, sphere, f, u + 0.5 * step * k2, t + 0.5 * step);
    const Eigen::VectorXd k4 = flow_rhs(grid, sphere, f, u + step * k3, t + step);
    u += step / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    const double t_next = (m + 1) * step;
    // Validate the accepted state, not only the stage evaluations.
    (void)flow_rhs(grid, sphere, f, u, t_next);
    trajectory.push_back({sphere, &grid, u, t_next});
  }
  return trajectory;
}

double suggested_dt(const ZonalGrid& grid, const GeodesicSphere& sphere, const Eigen::VectorXd& f) {
  const Eigen::VectorXd& x = grid.nodes();
  double min_dtheta = std::numeric_limits<double>::infinity();
  for (int i = 0; i + 1 < grid.size(); ++i)
    min_dtheta = std::min(min_dtheta, std::acos(x[i]) - std::acos(x[i + 1]));
  const double fmax = f.cwiseAbs().maxCoeff();
  if (fmax == 0.0) return 0.1 * sphere.sn * min_dtheta;
  return 0.1 * sphere.sn * min_dtheta / fmax;
}

ZonalHypersurface flow_surface(const FlowState& state) {
  ZonalHypersurface surf;
  surf.n = state.sphere.n;
  surf.c = state.sphere.c;
  surf.grid = state.grid;
  surf.rho = (state.sphere.a + state.u.array()).matrix();
  return surf;
}

FlowComparison flow_vs_radial(const ZonalGrid& grid, const GeodesicSphere& sphere, int k, double t,
                              double dt, const std::vector<int>& r_list) {
  const ZonalJet jet = zonal_harmonic_jet(grid, k);
  const auto trajectory = integrate_normal_flow(grid, sphere, jet.f, t, dt);

  FlowComparison cmp;
  cmp.t = t;
  cmp.r_list = r_list;
  cmp.flow_report = functional_report(shape_field(flow_surface(trajectory.back())), r_list);
  cmp.radial_report = functional_report(shape_field(radial_surface(grid, sphere, jet, t)), r_list);
  cmp.d_norm_Aring = std::abs(cmp.flow_report.norm_Aring - cmp.radial_report.norm_Aring);
  cmp.d_dev_H = std::abs(cmp.flow_report.dev_H - cmp.radial_report.dev_H);
  for (std::size_t ri = 0; ri < r_list.size(); ++ri) {
    cmp.d_norm_Pring.push_back(std::abs(cmp.flow_report.norm_Pring[ri] - cmp.radial_report.norm_Pring[ri]));
    cmp.d_dev_sr.push_back(std::abs(cmp.flow_report.dev_sr[ri] - cmp.radial_report.dev_sr[ri]));
  }
  return cmp;
}

}  // namespace umbilic
