#include "umbilic/variation.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "umbilic/symfun.hpp"

namespace umbilic {

namespace {

constexpr double kFloorRel = 1e-11;

double binom(int n, int k) { return binomial(n, k).convert_to<double>(); }

// Repeated Richardson elimination of even powers over a halving schedule;
// returns the deepest value reachable from the tail of the sequence.
double richardson_limit(const std::vector<double>& seq, int max_depth = 2) {
  std::vector<double> cur = seq;
  double result = cur.back();
  double factor = 4.0;
  for (int d = 0; d < max_depth && cur.size() >= 2; ++d) {
    std::vector<double> next;
    next.reserve(cur.size() - 1);
    for (std::size_t j = 0; j + 1 < cur.size(); ++j)
      next.push_back((factor * cur[j + 1] - cur[j]) / (factor - 1.0));
    cur = std::move(next);
    result = cur.back();
    factor *= 4.0;
  }
  return result;
}

// Self-convergence order from the first triple whose differences rise above
// the rounding floor; +inf when the sequence is flat to rounding.
double observed_order(const std::vector<double>& seq, double floor) {
  for (std::size_t j = 0; j + 2 < seq.size(); ++j) {
    const double d1 = std::abs(seq[j] - seq[j + 1]);
    const double d2 = std::abs(seq[j + 1] - seq[j + 2]);
    if (d1 > floor && d2 > floor) return std::log2(d1 / d2);
  }
  return std::numeric_limits<double>::infinity();
}

}  // namespace

double default_amplitude(const GeodesicSphere& sphere, int k) {
  return 1e-2 * sphere.a / std::max(1.0, k * k / 10.0);
}

ZonalHypersurface radial_surface(const ZonalGrid& grid, const GeodesicSphere& sphere, const ZonalJet& jet,
                                 double t) {
  ZonalHypersurface surf;
  surf.n = sphere.n;
  surf.c = sphere.c;
  surf.grid = &grid;
  surf.rho = (sphere.a + t * jet.f.array()).matrix();
  surf.rho_theta = (t * jet.f_theta.array()).matrix();
  surf.rho_theta2 = (t * jet.f_theta2.array()).matrix();
  if (!(surf.rho.minCoeff() > 0.0) || !(surf.rho.maxCoeff() < max_radius(sphere.c)))
    throw std::domain_error("radial_surface: deformation leaves the valid radius range");
  return surf;
}

double defect_functional(const FunctionalReport& report, DefectKind kind, double C, int r_index) {
  if (kind == DefectKind::MeanCurvature) return C * C * report.norm_Aring - report.dev_H;
  return C * C * report.norm_Pring.at(r_index) - report.dev_sr.at(r_index);
}

double predicted_ratio_limit(int n, int r, int k) {
  if (n < 2) throw std::invalid_argument("predicted_ratio_limit: require n >= 2");
  if (r < 1 || r > n - 1) throw std::invalid_argument("predicted_ratio_limit: require 1 <= r <= n-1");
  if (k < 1) throw std::invalid_argument("predicted_ratio_limit: require k >= 1");
  const double nr = n - r;
  return n * (n - 1.0) / (nr * nr) * ((k - 1.0) * (k + n)) / (static_cast<double>(k) * (k + n - 1.0));
}

double predicted_second_variation(DefectKind kind, double C, const GeodesicSphere& sphere, int k, int r) {
  const int n = sphere.n;
  const double xi_g = xi(sphere, k);
  const double sn2 = sphere.sn * sphere.sn;
  if (kind == DefectKind::MeanCurvature) {
    return (C * C * (n - 1.0) / n - 1.0) * xi_g * xi_g -
           (C * C * (n - 1.0) / sn2 - 2.0 * n * sphere.omega) * xi_g - 1.0 * n * n * sphere.omega * sphere.omega;
  }
  if (r < 1 || r > n - 1) throw std::invalid_argument("predicted_second_variation: require 1 <= r <= n-1");
  const double nr = n - r;
  const double om = sphere.lambda * sphere.lambda + sphere.c;
  const double alpha = C * C * nr * nr / (n * (n - 1.0)) - 1.0;
  const double beta = C * C * nr * nr / (sn2 * (n - 1.0)) - 2.0 * n * om;
  const double gamma = -1.0 * n * n * om * om;
  const double prefactor = std::pow(sphere.lambda, 2 * (r - 1)) * std::pow(binom(n - 1, r - 1), 2);
  return prefactor * (alpha * xi_g * xi_g - beta * xi_g + gamma);
}

SecondVariationEstimate numeric_second_variation(const ZonalGrid& grid, const GeodesicSphere& sphere,
                                                 DefectKind kind, double C, int k, int r, double t0,
                                                 int levels) {
  if (levels < 2) throw std::invalid_argument("numeric_second_variation: require levels >= 2");
  const ZonalJet jet = zonal_harmonic_jet(grid, k);
  if (t0 <= 0.0) t0 = default_amplitude(sphere, k);
  const std::vector<int> r_list = (kind == DefectKind::Newton) ? std::vector<int>{r} : std::vector<int>{};

  SecondVariationEstimate out;
  out.f2_integral = sphere_integral(grid, jet.f.array().square().matrix(), sphere.sn);

  std::vector<double> E;
  E.reserve(levels + 1);
  for (int j = 0; j <= levels; ++j) {
    const double t = t0 * std::pow(2.0, -j);
    const auto rep_plus = functional_report(shape_field(radial_surface(grid, sphere, jet, t)), r_list);
    const auto rep_minus = functional_report(shape_field(radial_surface(grid, sphere, jet, -t)), r_list);
    const double fp = defect_functional(rep_plus, kind, C, 0);
    const double fm = defect_functional(rep_minus, kind, C, 0);
    E.push_back((fp + fm) / (2.0 * t * t));
  }

  out.estimate = richardson_limit(E);
  const double floor = kFloorRel * std::max({1.0, std::abs(E.front()), std::abs(E.back())});
  out.order = observed_order(E, floor);
  out.converged = std::isinf(out.order) || out.order >= 1.5;
  out.per_unit_f2 = out.estimate / out.f2_integral;
  return out;
}

SharpnessResult sharpness_extrapolate(const ZonalGrid& grid, const DeformationSpec& spec) {
  const GeodesicSphere& sphere = spec.sphere;
  if (spec.levels < 2) throw std::invalid_argument("sharpness_extrapolate: require levels >= 2");
  if (spec.r_list.empty()) throw std::invalid_argument("sharpness_extrapolate: empty r_list");
  const ZonalJet jet = zonal_harmonic_jet(grid, spec.k);
  const double t0 = spec.t0 > 0.0 ? spec.t0 : default_amplitude(sphere, spec.k);

  SharpnessResult res;
  res.n = sphere.n;
  res.c = sphere.c;
  res.a = sphere.a;
  res.k = spec.k;
  res.r_list = spec.r_list;
  const std::size_t R = spec.r_list.size();
  res.ratio.assign(R, {});

  for (int j = 0; j <= spec.levels; ++j) {
    const double t = t0 * std::pow(2.0, -j);
    const auto rep_plus = functional_report(shape_field(radial_surface(grid, sphere, jet, t)), spec.r_list);
    const auto rep_minus = functional_report(shape_field(radial_surface(grid, sphere, jet, -t)), spec.r_list);
    res.t.push_back(t);
    res.min_ricci.push_back(std::min(rep_plus.min_ricci, rep_minus.min_ricci));
    for (std::size_t ri = 0; ri < R; ++ri) {
      const double dev = rep_plus.dev_sr[ri] + rep_minus.dev_sr[ri];
      const double defect = rep_plus.norm_Pring[ri] + rep_minus.norm_Pring[ri];
      res.ratio[ri].push_back(dev / defect);
    }
  }

  res.ricci_positive = true;
  for (const double m : res.min_ricci) res.ricci_positive = res.ricci_positive && m > 0.0;

  for (std::size_t ri = 0; ri < R; ++ri) {
    const double limit = richardson_limit(res.ratio[ri]);
    const double predicted = predicted_ratio_limit(sphere.n, spec.r_list[ri], spec.k);
    res.limit.push_back(limit);
    res.predicted.push_back(predicted);
    res.rel_err.push_back(std::abs(limit - predicted) / (predicted > 0.0 ? predicted : 1.0));
  }
  return res;
}

namespace {

EvolutionLine make_line(std::string id, int r, double h, double d_h, double d_h2, double target,
                        double scale) {
  EvolutionLine line;
  line.id = std::move(id);
  line.r = r;
  line.h = h;
  line.residual_h = std::abs(d_h - target) / scale;
  line.residual_h2 = std::abs(d_h2 - target) / scale;
  line.extrapolated_residual = std::abs((4.0 * d_h2 - d_h) / 3.0 - target) / scale;
  if (line.residual_h <= kFloorRel && line.residual_h2 <= kFloorRel) {
    line.order = std::numeric_limits<double>::infinity();
    line.converged = true;
  } else {
    line.order = std::log2(line.residual_h / line.residual_h2);
    line.converged = line.order >= 1.9;
  }
  return line;
}

EvolutionLine make_vector_line(std::string id, int r, double h, const Eigen::VectorXd& d_h,
                               const Eigen::VectorXd& d_h2, const Eigen::VectorXd& target, double scale) {
  EvolutionLine line;
  line.id = std::move(id);
  line.r = r;
  line.h = h;
  line.residual_h = (d_h - target).cwiseAbs().maxCoeff() / scale;
  line.residual_h2 = (d_h2 - target).cwiseAbs().maxCoeff() / scale;
  line.extrapolated_residual = ((4.0 * d_h2 - d_h) / 3.0 - target).cwiseAbs().maxCoeff() / scale;
  if (line.residual_h <= kFloorRel && line.residual_h2 <= kFloorRel) {
    line.order = std::numeric_limits<double>::infinity();
    line.converged = true;
  } else {
    line.order = std::log2(line.residual_h / line.residual_h2);
    line.converged = line.order >= 1.9;
  }
  return line;
}

struct SurfaceSample {
  FunctionalReport report;
  Eigen::VectorXd H;
  std::vector<Eigen::VectorXd> s_r;
};

SurfaceSample sample_surface(const ZonalGrid& grid, const GeodesicSphere& sphere, const ZonalJet& jet,
                             double t, const std::vector<int>& r_list) {
  const ShapeField shape = shape_field(radial_surface(grid, sphere, jet, t));
  SurfaceSample s;
  s.report = functional_report(shape, r_list);
  s.H = shape.H;
  for (const int r : r_list) s.s_r.push_back(symmetric_function_field(shape, r));
  return s;
}

}  // namespace

std::vector<EvolutionLine> evolution_residuals(const ZonalGrid& grid, const GeodesicSphere& sphere,
                                               const ZonalJet& f, const std::vector<int>& r_list, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("evolution_residuals: require h > 0");
  const int n = sphere.n;
  const double lam = sphere.lambda;
  const double c = sphere.c;
  const double sn2 = sphere.sn * sphere.sn;

  // Closed-form targets at t = 0.
  const Eigen::VectorXd lap_unit =
      (f.f_theta2.array() + (n - 1.0) * grid.cot_theta().array() * f.f_theta.array()).matrix();
  const Eigen::VectorXd lapf = lap_unit / sn2;
  const Eigen::VectorXd target_dH =
      (-lapf.array() - n * lam * lam * f.f.array() - n * c * f.f.array()).matrix();

  const double area = sphere_integral(grid, Eigen::VectorXd::Ones(grid.size()), sphere.sn);
  const double int_f = sphere_integral(grid, f.f, sphere.sn);
  const double int_f2 = sphere_integral(grid, f.f.array().square().matrix(), sphere.sn);
  const double target_dvol = n * lam * int_f;
  const double target_dHbar = sphere_integral(grid, target_dH, sphere.sn) / area;
  const bool mean_zero = std::abs(int_f) <= 1e-10 * std::sqrt(int_f2) * std::sqrt(area);

  double target_aring = 0.0;
  double scale_rate = 0.0;
  if (mean_zero) {
    target_aring = bochner_traceless_hessian({&grid, f.f}, sphere);
    const double int_lap2 = sphere_integral(grid, lapf.array().square().matrix(), sphere.sn);
    scale_rate = std::max(target_aring, (n - 1.0) / n * int_lap2);
  }

  const SurfaceSample sp = sample_surface(grid, sphere, f, h, r_list);
  const SurfaceSample sm = sample_surface(grid, sphere, f, -h, r_list);
  const SurfaceSample sp2 = sample_surface(grid, sphere, f, 0.5 * h, r_list);
  const SurfaceSample sm2 = sample_surface(grid, sphere, f, -0.5 * h, r_list);

  std::vector<EvolutionLine> lines;

  // (1) volume rate
  {
    const double d_h = (sp.report.volume - sm.report.volume) / (2.0 * h);
    const double d_h2 = (sp2.report.volume - sm2.report.volume) / h;
    const double scale =
        std::max(std::abs(target_dvol), n * std::sqrt(sphere.omega) * area * f.f.cwiseAbs().maxCoeff());
    lines.push_back(make_line("dvol", 0, h, d_h, d_h2, target_dvol, scale));
  }

  // (2) pointwise mean-curvature rate
  const double scale_dH = target_dH.cwiseAbs().maxCoeff();
  {
    const Eigen::VectorXd d_h = (sp.H - sm.H) / (2.0 * h);
    const Eigen::VectorXd d_h2 = (sp2.H - sm2.H) / h;
    lines.push_back(make_vector_line("dH", 0, h, d_h, d_h2, target_dH, scale_dH));
  }

  // (3) pointwise s_r rate
  for (std::size_t ri = 0; ri < r_list.size(); ++ri) {
    const int r = r_list[ri];
    const double coeff = binom(n - 1, r - 1) * std::pow(lam, r - 1);
    const Eigen::VectorXd target = coeff * target_dH;
    const double scale =
        std::max(target.cwiseAbs().maxCoeff(), binom(n - 1, r - 1) * std::pow(1.0 + std::abs(lam), r - 1) * scale_dH);
    const Eigen::VectorXd d_h = (sp.s_r[ri] - sm.s_r[ri]) / (2.0 * h);
    const Eigen::VectorXd d_h2 = (sp2.s_r[ri] - sm2.s_r[ri]) / h;
    lines.push_back(make_vector_line("ds_r", r, h, d_h, d_h2, target, scale));
  }

  if (mean_zero) {
    // (4) quadratic rate of the umbilicity defect
    {
      const double e_h = (sp.report.norm_Aring + sm.report.norm_Aring) / (2.0 * h * h);
      const double e_h2 = (sp2.report.norm_Aring + sm2.report.norm_Aring) / (0.5 * h * h);
      lines.push_back(make_line("aring_rate", 0, h, e_h, e_h2, target_aring, scale_rate));
    }
    // (5) quadratic rate of the Newton defect
    for (std::size_t ri = 0; ri < r_list.size(); ++ri) {
      const int r = r_list[ri];
      const double coeff = std::pow(lam, 2 * (r - 1)) * std::pow(binom(n - 2, r - 1), 2);
      const double target = coeff * target_aring;
      const double scale = std::max(
          target, std::pow(binom(n - 2, r - 1), 2) * std::pow(1.0 + lam * lam, r - 1) * scale_rate);
      const double e_h = (sp.report.norm_Pring[ri] + sm.report.norm_Pring[ri]) / (2.0 * h * h);
      const double e_h2 = (sp2.report.norm_Pring[ri] + sm2.report.norm_Pring[ri]) / (0.5 * h * h);
      lines.push_back(make_line("pring_rate", r, h, e_h, e_h2, target, scale));
    }
  }

  // (6) average mean-curvature rate
  {
    const double d_h = (sp.report.mean_H - sm.report.mean_H) / (2.0 * h);
    const double d_h2 = (sp2.report.mean_H - sm2.report.mean_H) / h;
    const double scale = std::max(std::abs(target_dHbar), scale_dH);
    lines.push_back(make_line("dHbar", 0, h, d_h, d_h2, target_dHbar, scale));
  }

  // (7) average s_r rate
  for (std::size_t ri = 0; ri < r_list.size(); ++ri) {
    const int r = r_list[ri];
    const double coeff = binom(n - 1, r - 1) * std::pow(lam, r - 1);
    const double target = coeff * target_dHbar;
    const double scale = std::max(
        {std::abs(target), binom(n - 1, r - 1) * std::pow(1.0 + std::abs(lam), r - 1) * scale_dH});
    const double d_h = (sp.report.mean_sr[ri] - sm.report.mean_sr[ri]) / (2.0 * h);
    const double d_h2 = (sp2.report.mean_sr[ri] - sm2.report.mean_sr[ri]) / h;
    lines.push_back(make_line("dsbar_r", r, h, d_h, d_h2, target, scale));
  }

  return lines;
}

Eigen::VectorXd ds_r_trace_form(const ZonalGrid& grid, const GeodesicSphere& sphere, const ZonalJet& f,
                                int r) {
  const int n = sphere.n;
  if (r < 1 || r > n) throw std::invalid_argument("ds_r_trace_form: require 1 <= r <= n");
  const double lam = sphere.lambda;
  const double sn2 = sphere.sn * sphere.sn;
  const Eigen::VectorXd lapf =
      ((f.f_theta2.array() + (n - 1.0) * grid.cot_theta().array() * f.f_theta.array()) / sn2).matrix();

  auto s_of = [&](int m) { return binom(n, m) * std::pow(lam, m); };  // s_m at the sphere
  // tr(P_{r-1} Hess f) = C(n-1,r-1) lambda^{r-1} Lap f at the umbilic point;
  // tr(P_{r-1} A^2) = s_1 s_r - (r+1) s_{r+1}; tr P_{r-1} = (n-r+1) s_{r-1}.
  const double hess_coeff = binom(n - 1, r - 1) * std::pow(lam, r - 1);
  const double a2_coeff = s_of(1) * s_of(r) - (r + 1) * (r + 1 <= n ? s_of(r + 1) : 0.0);
  const double c_coeff = sphere.c * (n - r + 1) * s_of(r - 1);
  return (-hess_coeff * lapf.array() - (a2_coeff + c_coeff) * f.f.array()).matrix();
}

}  // namespace umbilic
