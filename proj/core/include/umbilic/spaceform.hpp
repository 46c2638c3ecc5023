#pragma once

#include <limits>

namespace umbilic {

/// Value pair of the generalized sine/cosine of a simply connected space
/// form of sectional curvature c: the solution of y'' + c y = 0 with
/// sn(0) = 0, sn'(0) = 1 and cn = sn'. They satisfy cn^2 + c*sn^2 = 1.
struct SnCn {
  double sn;
  double cn;
};

/// Evaluate (sn_c(r), cn_c(r)). Near c*r^2 = 0 a truncated power series in
/// z = c*r^2 is used so that sweeps of c through zero stay smooth.
SnCn sn_cn(double c, double r);

/// Largest admissible geodesic radius: pi/sqrt(c) for c > 0, +inf otherwise.
double max_radius(double c);

/// A geodesic sphere of intrinsic dimension n and radius a in the space form
/// of curvature c, together with its derived invariants. It is totally
/// umbilical with principal curvature lambda = cn_c(a)/sn_c(a) (outward
/// normal; positive for small radii), and omega = lambda^2 + c = 1/sn_c(a)^2.
struct GeodesicSphere {
  int n;
  double c;
  double a;
  double lambda;
  double omega;
  double sn;  // sn_c(a), the round radius of the induced metric
  double cn;  // cn_c(a)
};

/// Build a GeodesicSphere, validating the radius for the given curvature.
/// Throws std::invalid_argument for n < 2, a <= 0 or (c > 0 and a >= pi/sqrt(c)).
GeodesicSphere sphere_invariants(int n, double c, double a);

/// k-th nonzero eigenvalue of the Laplace-Beltrami operator of the sphere:
/// xi(k) = k(k+n-1)/sn_c(a)^2 = k(k+n-1)*omega. Requires k >= 1.
double xi(const GeodesicSphere& sphere, int k);

}  // namespace umbilic
