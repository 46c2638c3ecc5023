#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

namespace umbilic {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Elementary symmetric functions e_0..e_n of the given spectrum by the
/// incremental product recurrence (expanding prod_i (1 + eta_i t)); e_0 = 1.
/// Works for double and for exact rationals alike.
template <class T>
std::vector<T> sigma_all(const std::vector<T>& spectrum) {
  const std::size_t n = spectrum.size();
  if (n == 0) throw std::invalid_argument("sigma_all: empty spectrum");
  std::vector<T> e(n + 1, T(0));
  e[0] = T(1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j >= 1; --j) e[j] += spectrum[i] * e[j - 1];
  return e;
}

/// The full Newton-transformation ladder of a spectrum in its principal
/// frame: sigma = (sigma_0..sigma_n) and p_eigs[r][i] = sigma_r of the
/// spectrum with entry i deleted, which is the i-th eigenvalue of P_r.
/// p_eigs[0] is all ones and p_eigs[n] all zeros.
template <class T>
struct NewtonStack {
  int n = 0;
  std::vector<T> sigma;
  std::vector<std::vector<T>> p_eigs;
};

template <class T>
NewtonStack<T> newton_stack(const std::vector<T>& spectrum) {
  const int n = static_cast<int>(spectrum.size());
  NewtonStack<T> stack;
  stack.n = n;
  stack.sigma = sigma_all(spectrum);
  stack.p_eigs.assign(n + 1, std::vector<T>(n, T(0)));
  std::vector<T> deleted(n - 1);
  for (int i = 0; i < n; ++i) {
    deleted.clear();
    for (int j = 0; j < n; ++j)
      if (j != i) deleted.push_back(spectrum[j]);
    if (deleted.empty()) {
      stack.p_eigs[0][i] = T(1);
      continue;
    }
    const std::vector<T> e = sigma_all(deleted);
    for (int r = 0; r < n; ++r) stack.p_eigs[r][i] = e[r];
  }
  // P_n = 0 and, for n = 1, P_0 = I.
  for (int i = 0; i < n; ++i) stack.p_eigs[n][i] = T(0);
  return stack;
}

/// Eigenvalues of P_r from the alternating-sum definition
/// sum_j (-1)^j sigma_{r-j} eta_i^j (an independent route for tests).
template <class T>
std::vector<T> newton_eigs_definition(const std::vector<T>& spectrum, int r) {
  const int n = static_cast<int>(spectrum.size());
  if (r < 0 || r > n) throw std::invalid_argument("newton_eigs_definition: r out of range");
  const std::vector<T> sigma = sigma_all(spectrum);
  std::vector<T> out(n, T(0));
  for (int i = 0; i < n; ++i) {
    T power(1);
    T acc(0);
    for (int j = 0; j <= r; ++j) {
      T term = sigma[r - j] * power;
      if (j % 2 == 1) term = -term;
      acc += term;
      power *= spectrum[i];
    }
    out[i] = acc;
  }
  return out;
}

/// Eigenvalues of P_r for all r from the recursion P_r = sigma_r I - A P_{r-1}
/// (a third route for tests).
template <class T>
std::vector<std::vector<T>> newton_eigs_recursion(const std::vector<T>& spectrum) {
  const int n = static_cast<int>(spectrum.size());
  const std::vector<T> sigma = sigma_all(spectrum);
  std::vector<std::vector<T>> mu(n + 1, std::vector<T>(n, T(0)));
  for (int i = 0; i < n; ++i) mu[0][i] = T(1);
  for (int r = 1; r <= n; ++r)
    for (int i = 0; i < n; ++i) mu[r][i] = sigma[r] - spectrum[i] * mu[r - 1][i];
  return mu;
}

/// Residuals of the Newton trace identities for r = 0..n-1:
///   tr(P_r)     - (n-r) sigma_r,
///   tr(A P_r)   - (r+1) sigma_{r+1},
///   tr(A^2 P_r) - (sigma_1 sigma_{r+1} - (r+2) sigma_{r+2}),
/// with sigma_m = 0 for m > n. All exactly zero in rational arithmetic.
template <class T>
struct TraceResiduals {
  std::vector<T> tr_p, tr_ap, tr_a2p;
};

template <class T>
TraceResiduals<T> trace_residuals(const std::vector<T>& spectrum, const NewtonStack<T>& stack) {
  const int n = stack.n;
  auto sigma_at = [&](int m) { return m <= n ? stack.sigma[m] : T(0); };
  TraceResiduals<T> res;
  res.tr_p.assign(n, T(0));
  res.tr_ap.assign(n, T(0));
  res.tr_a2p.assign(n, T(0));
  for (int r = 0; r < n; ++r) {
    T tp(0), tap(0), ta2p(0);
    for (int i = 0; i < n; ++i) {
      const T& mu = stack.p_eigs[r][i];
      tp += mu;
      tap += spectrum[i] * mu;
      ta2p += spectrum[i] * spectrum[i] * mu;
    }
    res.tr_p[r] = tp - T(n - r) * sigma_at(r);
    res.tr_ap[r] = tap - T(r + 1) * sigma_at(r + 1);
    res.tr_a2p[r] = ta2p - (sigma_at(1) * sigma_at(r + 1) - T(r + 2) * sigma_at(r + 2));
  }
  return res;
}

/// Binomial coefficient in exact integers; zero outside 0 <= k <= n.
BigInt binomial(int n, int k);

/// Exact residuals of the four combinatorial identities used by the
/// Newton-transformation calculus, for every r = 0..n:
///   [0] sum_i (-1)^i C(n,r-i)   - C(n-1,r)
///   [1] C(n+1,r) - C(n,r) - C(n,r-1)
///   [2] n C(n-1,r) - (n-r) C(n,r)
///   [3] sum_i (-1)^i C(n,r-i) i + C(n-2,r-1)
/// A nonzero entry is a hard failure. Requires n >= 2.
struct CombinatorialResiduals {
  int n = 0;
  std::vector<std::array<BigInt, 4>> residual;  // indexed by r = 0..n
};

CombinatorialResiduals combinatorial_identities(int n);

/// A smooth one-parameter family of symmetric matrices with its exact
/// velocity at t = 0.
struct SymmetricPath {
  std::function<Eigen::MatrixXd(double)> value;
  Eigen::MatrixXd velocity0;
};

/// Convergence record of the derivative identity
///   d/dt sigma_{r+1}(B(t))|_0 = tr(B'(0) Q_r(B(0))),
/// checked by central differences at steps h and h/2.
struct DerivativeCheck {
  double reference = 0.0;       // trace-formula value
  double estimate_h = 0.0;      // central difference at h
  double estimate_h2 = 0.0;     // central difference at h/2
  double residual_h = 0.0;
  double residual_h2 = 0.0;
  double order = 0.0;           // log2(residual_h / residual_h2); +inf below floor
  double extrapolated = 0.0;    // Richardson (4 e(h/2) - e(h)) / 3
  double extrapolated_residual = 0.0;
  bool converged = false;       // order >= 1.5 or both residuals below floor
};

/// Checks Reilly's derivative formula along the given path. sigma_{r+1} is
/// evaluated from the eigenvalues of B(t); Q_r comes from the eigen-frame of
/// B(0). Requires 0 <= r <= dim-1 and h > 0.
DerivativeCheck reilly_check(const SymmetricPath& path, int r, double h);

}  // namespace umbilic
