#include "umbilic/geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "umbilic/symfun.hpp"

namespace umbilic {

namespace {

// Assemble the principal-curvature spectrum at one node.
std::vector<double> node_spectrum(const ShapeField& shape, int i) {
  std::vector<double> spec(shape.n, shape.kappa_az[i]);
  spec[0] = shape.kappa_mer[i];
  return spec;
}

double integrate_surface(const ShapeField& shape, const Eigen::VectorXd& integrand) {
  return shape.grid->integrate((integrand.array() * shape.area_density.array()).matrix());
}

}  // namespace

ShapeField shape_field(const ZonalHypersurface& surface) {
  const ZonalGrid& grid = *surface.grid;
  const int n = surface.n;
  const int N = grid.size();
  if (grid.dim() != n) throw std::invalid_argument("shape_field: grid dimension mismatch");

  const double rho_max = max_radius(surface.c);
  for (int i = 0; i < N; ++i) {
    if (!(surface.rho[i] > 0.0) || !(surface.rho[i] < rho_max))
      throw std::domain_error("shape_field: rho outside the valid radius range at node " + std::to_string(i));
  }

  const Eigen::VectorXd rho_t =
      surface.rho_theta ? *surface.rho_theta : grid.deriv_theta(surface.rho);
  const Eigen::VectorXd rho_tt =
      surface.rho_theta2 ? *surface.rho_theta2 : grid.second_theta(surface.rho);

  ShapeField shape;
  shape.n = n;
  shape.c = surface.c;
  shape.grid = surface.grid;
  shape.kappa_mer.resize(N);
  shape.kappa_az.resize(N);
  shape.H.resize(N);
  shape.W.resize(N);
  shape.area_density.resize(N);

  for (int i = 0; i < N; ++i) {
    const auto [sn, cn] = sn_cn(surface.c, surface.rho[i]);
    const double rp = rho_t[i];
    const double W = std::sqrt(rp * rp + sn * sn);
    if (W < 1e-12) throw std::domain_error("shape_field: degenerate graph (W ~ 0) at node " + std::to_string(i));
    const double mer = (-sn * rho_tt[i] + 2.0 * cn * rp * rp + sn * sn * cn) / (W * W * W);
    const double az = (cn - rp * grid.cot_theta()[i] / sn) / W;
    shape.kappa_mer[i] = mer;
    shape.kappa_az[i] = az;
    shape.H[i] = mer + (n - 1) * az;
    shape.W[i] = W;
    shape.area_density[i] = W * std::pow(sn, n - 1);
  }
  return shape;
}

std::pair<double, double> ricci_range(const ShapeField& shape) {
  const int n = shape.n;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (int i = 0; i < shape.H.size(); ++i) {
    for (const double k : {shape.kappa_mer[i], shape.kappa_az[i]}) {
      const double ric = (n - 1) * shape.c + shape.H[i] * k - k * k;
      lo = std::min(lo, ric);
      hi = std::max(hi, ric);
    }
  }
  return {lo, hi};
}

Eigen::VectorXd symmetric_function_field(const ShapeField& shape, int r) {
  if (r < 0 || r > shape.n) throw std::invalid_argument("symmetric_function_field: r out of range");
  const int N = shape.grid->size();
  Eigen::VectorXd out(N);
  for (int i = 0; i < N; ++i) out[i] = sigma_all(node_spectrum(shape, i))[static_cast<std::size_t>(r)];
  return out;
}

FunctionalReport functional_report(const ShapeField& shape, const std::vector<int>& r_list) {
  const ZonalGrid& grid = *shape.grid;
  const int n = shape.n;
  const int N = grid.size();
  for (const int r : r_list)
    if (r < 1 || r > n - 1)
      throw std::invalid_argument("functional_report: r_list must lie within 1..n-1");

  FunctionalReport rep;
  rep.n = n;
  rep.r_list = r_list;
  const int R = static_cast<int>(r_list.size());

  // Per-node ladder data.
  Eigen::MatrixXd sr(N, R);
  std::vector<Eigen::MatrixXd> p_eigs(R, Eigen::MatrixXd(N, n));
  double worst_scalar = 0.0;
  for (int i = 0; i < N; ++i) {
    const auto spec = node_spectrum(shape, i);
    const auto stack = newton_stack(spec);
    for (int j = 0; j < R; ++j) {
      sr(i, j) = stack.sigma[static_cast<std::size_t>(r_list[j])];
      for (int d = 0; d < n; ++d) p_eigs[j](i, d) = stack.p_eigs[static_cast<std::size_t>(r_list[j])][d];
    }
    // Gauss-equation cross-check: sum of Ricci eigenvalues = n(n-1)c + 2 s_2.
    double tr_ric = 0.0;
    for (int d = 0; d < n; ++d)
      tr_ric += (n - 1) * shape.c + shape.H[i] * spec[d] - spec[d] * spec[d];
    const double s2 = stack.sigma[2];
    const double target = n * (n - 1.0) * shape.c + 2.0 * s2;
    const double scale = 1.0 + std::abs(n * (n - 1.0) * shape.c) + 2.0 * std::abs(s2);
    worst_scalar = std::max(worst_scalar, std::abs(tr_ric - target) / scale);
  }
  rep.max_scalar_residual = worst_scalar;

  rep.volume = integrate_surface(shape, Eigen::VectorXd::Ones(N));
  rep.mean_H = integrate_surface(shape, shape.H) / rep.volume;
  rep.dev_H = integrate_surface(shape, (shape.H.array() - rep.mean_H).square().matrix());

  // |A - (H/n) g|^2 = (n-1)/n (kappa_mer - kappa_az)^2 pointwise.
  const Eigen::VectorXd aring =
      ((n - 1.0) / n * (shape.kappa_mer.array() - shape.kappa_az.array()).square()).matrix();
  rep.norm_Aring = integrate_surface(shape, aring);

  // Direct evaluation (not via the Pythagoras identity, which tests assert).
  Eigen::VectorXd a_meanh(N);
  for (int i = 0; i < N; ++i) {
    const auto spec = node_spectrum(shape, i);
    double acc = 0.0;
    for (int d = 0; d < n; ++d) {
      const double dev = spec[d] - rep.mean_H / n;
      acc += dev * dev;
    }
    a_meanh[i] = acc;
  }
  rep.norm_A_meanH = integrate_surface(shape, a_meanh);

  for (int j = 0; j < R; ++j) {
    const int r = r_list[j];
    const double mean_sr = integrate_surface(shape, sr.col(j)) / rep.volume;
    rep.mean_sr.push_back(mean_sr);
    rep.dev_sr.push_back(integrate_surface(shape, (sr.col(j).array() - mean_sr).square().matrix()));

    Eigen::VectorXd pring(N), p_meansr(N);
    for (int i = 0; i < N; ++i) {
      double acc = 0.0, acc_mean = 0.0;
      for (int d = 0; d < n; ++d) {
        const double dev = p_eigs[j](i, d) - (n - r) * sr(i, j) / n;
        const double dev_mean = p_eigs[j](i, d) - (n - r) * mean_sr / n;
        acc += dev * dev;
        acc_mean += dev_mean * dev_mean;
      }
      pring[i] = acc;
      p_meansr[i] = acc_mean;
    }
    rep.norm_Pring.push_back(integrate_surface(shape, pring));
    rep.norm_P_meansr.push_back(integrate_surface(shape, p_meansr));
  }

  const auto [lo, hi] = ricci_range(shape);
  rep.min_ricci = lo;
  rep.max_ricci = hi;
  return rep;
}

MarginTable inequality_margins(const FunctionalReport& report) {
  const double n = report.n;
  MarginTable out;
  out.min_ricci = report.min_ricci;
  out.r_list = report.r_list;
  out.margin_H = n / (n - 1.0) * report.norm_Aring - report.dev_H;
  for (std::size_t j = 0; j < report.r_list.size(); ++j) {
    const double nr = n - report.r_list[j];
    out.margin_r.push_back(n * (n - 1.0) * report.norm_Pring[j] - nr * nr * report.dev_sr[j]);
  }
  return out;
}

}  // namespace umbilic
