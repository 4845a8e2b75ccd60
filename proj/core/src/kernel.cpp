#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Cholesky>

#include "nmmo/surrogate.hpp"

namespace nmmo {
namespace {

constexpr double kSqrt5 = 2.23606797749978969640917366873128;

void check_lengthscales(const KernelParams& k) {
  if ((k.lengthscales.array() <= 0.0).any() || !k.lengthscales.allFinite()) {
    throw std::invalid_argument("matern52: lengthscales must be positive and finite");
  }
}

double matern_from_rho(double rho, double variance) {
  return variance * (1.0 + kSqrt5 * rho + 5.0 / 3.0 * rho * rho) * std::exp(-kSqrt5 * rho);
}

}  // namespace

Eigen::VectorXd KernelParams::to_log() const {
  const Eigen::Index d = lengthscales.size();
  Eigen::VectorXd theta(d + 2);
  theta.head(d) = lengthscales.array().log();
  theta[d] = std::log(signal_variance);
  theta[d + 1] = std::log(noise_variance);
  return theta;
}

KernelParams KernelParams::from_log(const Eigen::VectorXd& theta) {
  const Eigen::Index d = theta.size() - 2;
  KernelParams k;
  k.lengthscales = theta.head(d).array().exp();
  k.signal_variance = std::exp(theta[d]);
  k.noise_variance = std::exp(theta[d + 1]);
  return k;
}

double matern52_ard(const Eigen::Ref<const Eigen::VectorXd>& x, const Eigen::Ref<const Eigen::VectorXd>& x2,
                    const KernelParams& k) {
  if (x.size() != x2.size() || x.size() != k.lengthscales.size()) {
    throw std::invalid_argument("matern52: dimension mismatch");
  }
  check_lengthscales(k);
  const double rho = ((x - x2).array() / k.lengthscales.array()).matrix().norm();
  return matern_from_rho(rho, k.signal_variance);
}

Eigen::MatrixXd matern52_gram(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, const KernelParams& k) {
  if (a.cols() != b.cols() || a.cols() != k.lengthscales.size()) {
    throw std::invalid_argument("matern52_gram: dimension mismatch");
  }
  check_lengthscales(k);
  const Eigen::RowVectorXd inv_ls = k.lengthscales.cwiseInverse().transpose();
  const Eigen::MatrixXd as = a.array().rowwise() * inv_ls.array();
  const Eigen::MatrixXd bs = b.array().rowwise() * inv_ls.array();
  Eigen::MatrixXd out(a.rows(), b.rows());
  for (Eigen::Index j = 0; j < b.rows(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      const double rho = (as.row(i) - bs.row(j)).norm();
      out(i, j) = matern_from_rho(rho, k.signal_variance);
    }
  }
  return out;
}

LogLikelihood log_marginal_likelihood(const KernelParams& k, const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
  const Eigen::Index n = x.rows();
  const Eigen::Index d = x.cols();
  if (n < 1) throw std::invalid_argument("log_marginal_likelihood: need at least one observation");
  if (y.size() != n) throw std::invalid_argument("log_marginal_likelihood: target count mismatch");
  if (k.lengthscales.size() != d) throw std::invalid_argument("log_marginal_likelihood: lengthscale count mismatch");
  check_lengthscales(k);

  const Eigen::RowVectorXd inv_ls = k.lengthscales.cwiseInverse().transpose();
  const Eigen::MatrixXd xs = x.array().rowwise() * inv_ls.array();

  // Kernel values and the common factor of the lengthscale derivatives,
  // (5/3)σ²(1 + √5ρ)exp(−√5ρ).
  Eigen::MatrixXd gram(n, n);
  Eigen::MatrixXd dfactor(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = j; i < n; ++i) {
      const double rho = (xs.row(i) - xs.row(j)).norm();
      const double e = std::exp(-kSqrt5 * rho);
      gram(i, j) = gram(j, i) = k.signal_variance * (1.0 + kSqrt5 * rho + 5.0 / 3.0 * rho * rho) * e;
      dfactor(i, j) = dfactor(j, i) = 5.0 / 3.0 * k.signal_variance * (1.0 + kSqrt5 * rho) * e;
    }
  }

  Eigen::MatrixXd cov = gram;
  cov.diagonal().array() += k.noise_variance;
  const Eigen::LLT<Eigen::MatrixXd> llt(cov);
  const Eigen::VectorXd diag = llt.matrixL().toDenseMatrix().diagonal();
  const double max_diag = cov.diagonal().maxCoeff();
  if (llt.info() != Eigen::Success || !diag.allFinite() || (diag.array().square() <= 1e-12 * max_diag).any()) {
    throw NumericalError("log_marginal_likelihood: Gram matrix is not positive definite");
  }

  const Eigen::VectorXd alpha = llt.solve(y);
  LogLikelihood out;
  out.value = -0.5 * y.dot(alpha) - diag.array().log().sum() -
              0.5 * static_cast<double>(n) * std::log(2.0 * std::numbers::pi);

  // d/dθ = ½ tr((ααᵀ − K⁻¹) dK/dθ)
  const Eigen::MatrixXd w = alpha * alpha.transpose() - llt.solve(Eigen::MatrixXd::Identity(n, n));
  out.gradient.resize(d + 2);
  for (Eigen::Index dim = 0; dim < d; ++dim) {
    double acc = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index i = 0; i < n; ++i) {
        const double delta = xs(i, dim) - xs(j, dim);
        acc += w(i, j) * dfactor(i, j) * delta * delta;
      }
    }
    out.gradient[dim] = 0.5 * acc;
  }
  out.gradient[d] = 0.5 * (w.array() * gram.array()).sum();
  out.gradient[d + 1] = 0.5 * k.noise_variance * w.trace();
  return out;
}

Eigen::MatrixXd psd_cholesky(const Eigen::MatrixXd& c) {
  const Eigen::Index m = c.rows();
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(m, m);
  if (m == 0) return l;
  const double tol = 1e-12 * std::max(c.diagonal().maxCoeff(), 0.0);
  for (Eigen::Index j = 0; j < m; ++j) {
    const double pivot = c(j, j) - l.row(j).head(j).squaredNorm();
    if (!(pivot > tol)) continue;
    const double ljj = std::sqrt(pivot);
    l(j, j) = ljj;
    for (Eigen::Index i = j + 1; i < m; ++i) {
      l(i, j) = (c(i, j) - l.row(i).head(j).dot(l.row(j).head(j))) / ljj;
    }
  }
  return l;
}

}  // namespace nmmo
