#include <cmath>
#include <random>

#include <doctest.h>

#include "umbilic/spaceform.hpp"
#include "umbilic/zonal.hpp"

using namespace umbilic;
using Eigen::VectorXd;

namespace {

// Independent moment oracle: int_{-1}^{1} x^m (1-x^2)^s dx via the Beta
// function (zero for odd m).
double moment_oracle(int m, double s) {
  if (m % 2 == 1) return 0.0;
  return std::exp(std::lgamma(0.5 * (m + 1)) + std::lgamma(s + 1.0) - std::lgamma(0.5 * (m + 1) + s + 1.0));
}

VectorXd eval_poly(const std::vector<double>& coeff, const VectorXd& x) {
  VectorXd out = VectorXd::Zero(x.size());
  for (int i = static_cast<int>(coeff.size()) - 1; i >= 0; --i)
    out = (out.array() * x.array() + coeff[i]).matrix();
  return out;
}

std::vector<double> poly_derivative(const std::vector<double>& coeff) {
  std::vector<double> d;
  for (std::size_t i = 1; i < coeff.size(); ++i) d.push_back(i * coeff[i]);
  if (d.empty()) d.push_back(0.0);
  return d;
}

}  // namespace

TEST_SUITE_BEGIN("zonal");

TEST_CASE("grid basics and closed-form integrals") {
  const ZonalGrid g2(2, 32);
  CHECK(g2.integrate(VectorXd::Ones(32)) == doctest::Approx(4.0 * M_PI).epsilon(1e-14));
  const VectorXd x2 = g2.nodes().array().square().matrix();
  CHECK(g2.integrate_weight(x2) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(g2.integrate(x2) == doctest::Approx(4.0 * M_PI / 3.0).epsilon(1e-14));

  const ZonalGrid g3(3, 24);
  CHECK(g3.integrate_weight(VectorXd::Ones(24)) == doctest::Approx(M_PI / 2.0).epsilon(1e-14));

  for (int i = 0; i < g3.size(); ++i) {
    CHECK(g3.weights()[i] > 0.0);
    CHECK(std::abs(g3.nodes()[i]) < 1.0);
  }
  CHECK_THROWS_AS(ZonalGrid(2, 7), std::invalid_argument);
  CHECK_THROWS_AS(ZonalGrid(1, 16), std::invalid_argument);
}

TEST_CASE("quadrature is exact up to degree 2N-3 against the Beta oracle") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (const int n : {2, 3, 4, 5}) {
    const int N = 32;
    const ZonalGrid g(n, N);
    const double s = 0.5 * (n - 2);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<double> coeff(2 * N - 2);  // degree 2N-3
      double exact = 0.0;
      for (std::size_t m = 0; m < coeff.size(); ++m) {
        coeff[m] = unif(rng);
        exact += coeff[m] * moment_oracle(static_cast<int>(m), s);
      }
      const double quad = g.integrate_weight(eval_poly(coeff, g.nodes()));
      CHECK(std::abs(quad - exact) <= 1e-12 * std::max(1.0, std::abs(exact)));
    }
  }
}

TEST_CASE("differentiation is exact on polynomials") {
  std::mt19937 rng(29);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  const ZonalGrid g(3, 48);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> coeff(46);
    for (auto& c : coeff) c = unif(rng);
    const VectorXd values = eval_poly(coeff, g.nodes());
    const VectorXd expected = eval_poly(poly_derivative(coeff), g.nodes());
    const VectorXd got = g.deriv_x(values);
    CHECK((got - expected).cwiseAbs().maxCoeff() <= 1e-10 * expected.cwiseAbs().maxCoeff());
  }
}

TEST_CASE("zonal harmonics: first degrees and normalization") {
  const ZonalGrid g(2, 24);
  const auto f1 = zonal_harmonic(g, 1);
  CHECK((f1.values - g.nodes()).cwiseAbs().maxCoeff() <= 1e-15);

  // n = 2 degree 2 is the Legendre polynomial (3x^2 - 1)/2.
  const auto f2 = zonal_harmonic(g, 2);
  const VectorXd legendre2 = (1.5 * g.nodes().array().square() - 0.5).matrix();
  CHECK((f2.values - legendre2).cwiseAbs().maxCoeff() <= 1e-14);

  for (const int n : {2, 4}) {
    const ZonalGrid gg(n, 40);
    for (int k = 1; k <= 20; ++k) {
      const auto f = zonal_harmonic(gg, k);
      // Mean-zero by orthogonality to constants.
      CHECK(std::abs(gg.integrate_weight(f.values)) <=
            1e-13 * gg.integrate_weight(f.values.cwiseAbs()));
      CHECK(f.values.cwiseAbs().maxCoeff() <= 1.0 + 1e-12);
    }
  }
  CHECK_THROWS_AS(zonal_harmonic(g, 0), std::invalid_argument);
  CHECK_THROWS_AS(zonal_harmonic(g, 23), std::invalid_argument);
}

TEST_CASE("orthogonality of distinct harmonics") {
  for (const int n : {2, 3, 5}) {
    const ZonalGrid g(n, 64);
    for (int k = 1; k <= 10; ++k) {
      for (int m = k + 1; m <= 12; ++m) {
        const auto fk = zonal_harmonic(g, k);
        const auto fm = zonal_harmonic(g, m);
        const double inner = g.integrate_weight((fk.values.array() * fm.values.array()).matrix());
        const double norm_k = std::sqrt(g.integrate_weight(fk.values.array().square().matrix()));
        const double norm_m = std::sqrt(g.integrate_weight(fm.values.array().square().matrix()));
        CHECK(std::abs(inner) <= 1e-12 * norm_k * norm_m);
      }
    }
  }
}

TEST_CASE("sphere laplacian eigen-relation") {
  const ZonalGrid g(2, 32);
  const ZonalFunction one{&g, VectorXd::Ones(32)};
  CHECK(sphere_laplacian(one, 1.0).values.cwiseAbs().maxCoeff() <= 1e-12);

  const auto fx = zonal_harmonic(g, 1);
  const VectorXd lap = sphere_laplacian(fx, 1.0).values;
  CHECK((lap + 2.0 * g.nodes()).cwiseAbs().maxCoeff() <= 1e-12);

  // Degree 5 on the geodesic sphere of radius sn_{-1}(1) in dimension 4.
  const auto sphere = sphere_invariants(4, -1.0, 1.0);
  const ZonalGrid g4(4, 48);
  const auto f5 = zonal_harmonic(g4, 5);
  const VectorXd lap5 = sphere_laplacian(f5, sphere.sn).values;
  const double expected = xi(sphere, 5);
  CHECK((lap5 + expected * f5.values).cwiseAbs().maxCoeff() <=
        1e-10 * expected * f5.values.cwiseAbs().maxCoeff());
}

TEST_CASE("eigen-residuals stay small at production size") {
  for (const int n : {2, 3, 5}) {
    const ZonalGrid g(n, 256);
    for (const double c : {-1.0, 0.0, 1.0}) {
      const auto sphere = sphere_invariants(n, c, 1.0);
      for (int k = 1; k <= 20; ++k) {
        const auto f = zonal_harmonic(g, k);
        const VectorXd residual = sphere_laplacian(f, sphere.sn).values + xi(sphere, k) * f.values;
        CHECK(residual.cwiseAbs().maxCoeff() <= 1e-8 * f.values.cwiseAbs().maxCoeff());
      }
    }
  }
}

TEST_CASE("harmonic jets match collocation derivatives") {
  for (const int n : {2, 5}) {
    const ZonalGrid g(n, 96);
    for (const int k : {1, 3, 8, 20}) {
      const auto jet = zonal_harmonic_jet(g, k);
      const auto num = numerical_jet(g, jet.f);
      CHECK((jet.f_theta - num.f_theta).cwiseAbs().maxCoeff() <= 1e-9 * (1.0 + num.f_theta.cwiseAbs().maxCoeff()));
      CHECK((jet.f_theta2 - num.f_theta2).cwiseAbs().maxCoeff() <=
            1e-8 * (1.0 + num.f_theta2.cwiseAbs().maxCoeff()));
    }
  }
}

TEST_CASE("bochner reduction of the traceless Hessian") {
  const auto sphere = sphere_invariants(2, 0.0, 1.0);
  const ZonalGrid g(2, 48);

  // Non-mean-zero input is rejected.
  CHECK_THROWS_AS(bochner_traceless_hessian({&g, VectorXd::Ones(48)}, sphere), std::invalid_argument);

  // First harmonics have pure-trace Hessian: xi(1) = n omega kills the bracket.
  const auto f1 = zonal_harmonic(g, 1);
  const double f2_int1 = sphere_integral(g, f1.values.array().square().matrix(), sphere.sn);
  const double b1 = bochner_traceless_hessian(f1, sphere);
  CHECK(std::abs(b1) <= 1e-10 * xi(sphere, 1) * xi(sphere, 1) * f2_int1);

  // Degree 2 on the unit Euclidean sphere: bracket = (1/2) 36 - 6 = 12.
  const auto f2 = zonal_harmonic(g, 2);
  const double f2_int = sphere_integral(g, f2.values.array().square().matrix(), sphere.sn);
  CHECK(bochner_traceless_hessian(f2, sphere) == doctest::Approx(12.0 * f2_int).epsilon(1e-10));

  // Squared norm: nonnegative for random mean-zero combinations.
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    VectorXd f = VectorXd::Zero(48);
    for (int k = 1; k <= 6; ++k) f += unif(rng) * zonal_harmonic(g, k).values;
    const double value = bochner_traceless_hessian({&g, f}, sphere);
    const double scale = sphere_integral(g, f.array().square().matrix(), sphere.sn);
    CHECK(value >= -1e-10 * scale);
  }
}

TEST_CASE("bochner matches the spectral bracket for eigenfunctions") {
  for (const int n : {2, 3, 5}) {
    const ZonalGrid g(n, 64);
    for (const double c : {-1.0, 0.0, 1.0}) {
      const auto sphere = sphere_invariants(n, c, 0.9);
      for (const int k : {1, 2, 5, 9}) {
        const auto f = zonal_harmonic(g, k);
        const double f2_int = sphere_integral(g, f.values.array().square().matrix(), sphere.sn);
        const double xi_k = xi(sphere, k);
        const double bracket = (n - 1.0) / n * xi_k * xi_k - (n - 1.0) * sphere.omega * xi_k;
        const double value = bochner_traceless_hessian(f, sphere);
        CHECK(std::abs(value - bracket * f2_int) <=
              1e-9 * std::max(std::abs(bracket) * f2_int, xi_k * xi_k * f2_int * 1e-3));
      }
    }
  }
}

TEST_CASE("shared grids are cached") {
  const auto a = shared_grid(3, 64);
  const auto b = shared_grid(3, 64);
  CHECK(a.get() == b.get());
  CHECK(shared_grid(3, 32).get() != a.get());
}

TEST_SUITE_END();
