#include "umbilic/symfun.hpp"

#include <cmath>
#include <limits>

namespace umbilic {

BigInt binomial(int n, int k) {
  if (k < 0 || k > n || n < 0) return BigInt(0);
  k = std::min(k, n - k);
  BigInt num(1);
  for (int i = 0; i < k; ++i) {
    num *= (n - i);
    num /= (i + 1);  // exact: product of i+1 consecutive integers
  }
  return num;
}

CombinatorialResiduals combinatorial_identities(int n) {
  if (n < 2) throw std::invalid_argument("combinatorial_identities: require n >= 2");
  CombinatorialResiduals out;
  out.n = n;
  out.residual.resize(n + 1);
  for (int r = 0; r <= n; ++r) {
    BigInt alt(0), alt_weighted(0);
    for (int i = 0; i <= r; ++i) {
      const BigInt term = binomial(n, r - i);
      if (i % 2 == 0) {
        alt += term;
        alt_weighted += term * i;
      } else {
        alt -= term;
        alt_weighted -= term * i;
      }
    }
    out.residual[r][0] = alt - binomial(n - 1, r);
    out.residual[r][1] = binomial(n + 1, r) - binomial(n, r) - binomial(n, r - 1);
    out.residual[r][2] = BigInt(n) * binomial(n - 1, r) - BigInt(n - r) * binomial(n, r);
    out.residual[r][3] = alt_weighted + binomial(n - 2, r - 1);
  }
  return out;
}

namespace {

std::vector<double> eigenvalues_of(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) throw std::runtime_error("reilly_check: eigensolver failed");
  const Eigen::VectorXd& v = eig.eigenvalues();
  return std::vector<double>(v.data(), v.data() + v.size());
}

double sigma_of_matrix(const Eigen::MatrixXd& m, int r) {
  return sigma_all(eigenvalues_of(m))[static_cast<std::size_t>(r)];
}

}  // namespace

DerivativeCheck reilly_check(const SymmetricPath& path, int r, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("reilly_check: require h > 0");
  const Eigen::MatrixXd b0 = path.value(0.0);
  const int dim = static_cast<int>(b0.rows());
  if (r < 0 || r >= dim) throw std::invalid_argument("reilly_check: require 0 <= r <= dim-1");

  // Q_r of B(0) in its eigen-frame; the trace pairs its eigenvalues with the
  // diagonal of the rotated velocity.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(b0);
  if (eig.info() != Eigen::Success) throw std::runtime_error("reilly_check: eigensolver failed");
  const Eigen::VectorXd& evals = eig.eigenvalues();
  const auto stack = newton_stack(std::vector<double>(evals.data(), evals.data() + dim));
  const Eigen::MatrixXd rotated = eig.eigenvectors().transpose() * path.velocity0 * eig.eigenvectors();
  double reference = 0.0;
  for (int i = 0; i < dim; ++i) reference += stack.p_eigs[r][i] * rotated(i, i);

  DerivativeCheck out;
  out.reference = reference;
  auto central = [&](double step) {
    return (sigma_of_matrix(path.value(step), r + 1) - sigma_of_matrix(path.value(-step), r + 1)) /
           (2.0 * step);
  };
  out.estimate_h = central(h);
  out.estimate_h2 = central(0.5 * h);
  out.residual_h = std::abs(out.estimate_h - reference);
  out.residual_h2 = std::abs(out.estimate_h2 - reference);
  out.extrapolated = (4.0 * out.estimate_h2 - out.estimate_h) / 3.0;
  out.extrapolated_residual = std::abs(out.extrapolated - reference);

  const double floor = 1e-12 * std::max({1.0, std::abs(reference), std::abs(out.estimate_h)});
  if (out.residual_h <= floor && out.residual_h2 <= floor) {
    out.order = std::numeric_limits<double>::infinity();
    out.converged = true;
  } else {
    out.order = std::log2(out.residual_h / out.residual_h2);
    out.converged = out.order >= 1.5;
  }
  return out;
}

}  // namespace umbilic
