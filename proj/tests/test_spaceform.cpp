#include <cmath>
#include <random>
#include <stdexcept>

#include <doctest.h>

#include "umbilic/spaceform.hpp"

using namespace umbilic;

TEST_SUITE_BEGIN("spaceform");

TEST_CASE("sn_cn closed-form branches") {
  auto [sn0, cn0] = sn_cn(0.0, 2.0);
  CHECK(sn0 == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(cn0 == doctest::Approx(1.0).epsilon(1e-15));

  auto [sn1, cn1] = sn_cn(1.0, M_PI / 2.0);
  CHECK(sn1 == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(cn1) < 1e-15);

  // c = -1 branch against the standard hyperbolic functions.
  auto [snm, cnm] = sn_cn(-1.0, 1.0);
  CHECK(snm == doctest::Approx(1.1752011936438014).epsilon(1e-15));
  CHECK(cnm == doctest::Approx(1.5430806348152437).epsilon(1e-15));
}

TEST_CASE("cn^2 + c sn^2 = 1 at random samples") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> curv(-4.0, 4.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 10000; ++trial) {
    const double c = curv(rng);
    const double rmax = c > 0.0 ? 0.95 * M_PI / std::sqrt(c) : 2.5;
    const double r = unit(rng) * rmax;
    auto [sn, cn] = sn_cn(c, r);
    CHECK(std::abs(cn * cn + c * sn * sn - 1.0) <= 1e-14);
  }
}

TEST_CASE("series branch is smooth across the threshold") {
  // The |c| r^2 < 1e-8 series must join the trig branch without a jump.
  const double r = 1.0;
  for (const double sign : {1.0, -1.0}) {
    auto below = sn_cn(sign * 0.99e-8, r);
    auto above = sn_cn(sign * 1.01e-8, r);
    CHECK(std::abs(below.sn - above.sn) <= 1e-10);
    CHECK(std::abs(below.cn - above.cn) <= 1e-10);
    CHECK(std::abs(below.sn - r) <= 2e-9);
  }
}

TEST_CASE("sphere invariants") {
  const auto euclidean = sphere_invariants(2, 0.0, 1.0);
  CHECK(euclidean.lambda == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(euclidean.omega == doctest::Approx(1.0).epsilon(1e-15));

  // Equator of the round sphere is totally geodesic.
  const auto equator = sphere_invariants(3, 1.0, M_PI / 2.0);
  CHECK(std::abs(equator.lambda) < 1e-15);
  CHECK(equator.omega == doctest::Approx(1.0).epsilon(1e-14));

  const auto hyper = sphere_invariants(4, -1.0, 1.0);
  CHECK(hyper.lambda == doctest::Approx(1.0 / std::tanh(1.0)).epsilon(1e-14));
  CHECK(hyper.omega == doctest::Approx(1.0 / (std::sinh(1.0) * std::sinh(1.0))).epsilon(1e-14));
}

TEST_CASE("omega equals 1/sn^2 across a parameter grid") {
  for (const double c : {-2.0, -1.0, -0.25, 0.0, 0.25, 1.0, 2.0}) {
    for (double a : {0.3, 0.7, 1.1, 1.9}) {
      if (c > 0.0) a = std::min(a, 0.9 * M_PI / std::sqrt(c));
      for (const int n : {2, 3, 5}) {
        const auto s = sphere_invariants(n, c, a);
        CHECK(std::abs(s.omega * s.sn * s.sn - 1.0) <= 1e-14);
      }
    }
  }
}

TEST_CASE("xi values, monotonicity and growth") {
  CHECK(xi(sphere_invariants(2, 0.0, 1.0), 1) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(xi(sphere_invariants(3, 0.0, 2.0), 3) == doctest::Approx(3.75).epsilon(1e-15));
  CHECK(xi(sphere_invariants(2, 1.0, M_PI / 2.0), 2) == doctest::Approx(6.0).epsilon(1e-14));

  const auto s = sphere_invariants(3, -1.0, 0.8);
  for (int k = 1; k < 40; ++k) CHECK(xi(s, k + 1) > xi(s, k));
  const int big = 4000;
  CHECK(std::abs(xi(s, big) / (static_cast<double>(big) * big) - s.omega) <= s.omega * (s.n + 1.0) / big);
}

TEST_CASE("invalid arguments are rejected") {
  CHECK_THROWS_AS(sphere_invariants(1, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(sphere_invariants(2, 0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(sphere_invariants(2, 1.0, M_PI), std::invalid_argument);
  CHECK_THROWS_AS(xi(sphere_invariants(2, 0.0, 1.0), 0), std::invalid_argument);
}

TEST_SUITE_END();
