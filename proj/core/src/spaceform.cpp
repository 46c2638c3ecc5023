#include "umbilic/spaceform.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace umbilic {

SnCn sn_cn(double c, double r) {
  const double z = c * r * r;
  if (std::abs(z) < 1e-8) {
    // sin(sqrt(z))/sqrt(z) and cos(sqrt(z)) as series in z; valid for either
    // sign of z, truncation error below 1e-34 here.
    const double sn = r * (1.0 - z / 6.0 * (1.0 - z / 20.0 * (1.0 - z / 42.0)));
    const double cn = 1.0 - z / 2.0 * (1.0 - z / 12.0 * (1.0 - z / 30.0));
    return {sn, cn};
  }
  if (c > 0.0) {
    const double rc = std::sqrt(c);
    return {std::sin(rc * r) / rc, std::cos(rc * r)};
  }
  const double rc = std::sqrt(-c);
  return {std::sinh(rc * r) / rc, std::cosh(rc * r)};
}

double max_radius(double c) {
  if (c > 0.0) return M_PI / std::sqrt(c);
  return std::numeric_limits<double>::infinity();
}

GeodesicSphere sphere_invariants(int n, double c, double a) {
  if (n < 2) throw std::invalid_argument("sphere_invariants: require n >= 2, got n = " + std::to_string(n));
  if (!(a > 0.0)) throw std::invalid_argument("sphere_invariants: require radius a > 0");
  if (!(a < max_radius(c)))
    throw std::invalid_argument("sphere_invariants: radius a = " + std::to_string(a) +
                                " not below pi/sqrt(c) for c = " + std::to_string(c));

  const auto [sn, cn] = sn_cn(c, a);
  const double lambda = cn / sn;
  const double omega = lambda * lambda + c;

  // omega*sn^2 = cn^2 + c*sn^2 = 1 up to rounding.
  if (std::abs(omega * sn * sn - 1.0) > 1e-12)
    throw std::logic_error("sphere_invariants: sn/cn consistency identity violated");

  return {n, c, a, lambda, omega, sn, cn};
}

double xi(const GeodesicSphere& sphere, int k) {
  if (k < 1) throw std::invalid_argument("xi: require k >= 1");
  return static_cast<double>(k) * (k + sphere.n - 1) * sphere.omega;
}

}  // namespace umbilic
