#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include <Eigen/Cholesky>

#include "nmmo/sobol.hpp"
#include "nmmo/surrogate.hpp"

namespace nmmo {
namespace {

constexpr std::array<double, 4> kJitterLadder = {0.0, 1e-6, 1e-4, 1e-2};

// Centers and scales targets; constant targets keep unit scale.
Eigen::VectorXd standardize(const Eigen::VectorXd& y, double& offset, double& scale) {
  const Eigen::Index n = y.size();
  offset = y.mean();
  scale = 1.0;
  if (n >= 2) {
    const double sd = std::sqrt((y.array() - offset).square().sum() / static_cast<double>(n - 1));
    if (sd > 1e-12 * std::max(1.0, std::abs(offset))) scale = sd;
  }
  return (y.array() - offset) / scale;
}

bool usable_factor(const Eigen::LLT<Eigen::MatrixXd>& llt, double max_diag) {
  if (llt.info() != Eigen::Success) return false;
  const Eigen::VectorXd diag = llt.matrixL().toDenseMatrix().diagonal();
  return diag.allFinite() && (diag.array().square() > 1e-12 * max_diag).all();
}

}  // namespace

GPModel::GPModel(KernelParams kernel, Eigen::MatrixXd inputs, const Eigen::VectorXd& targets)
    : kernel_(std::move(kernel)), inputs_(std::move(inputs)) {
  const Eigen::Index n = inputs_.rows();
  if (n < 1) throw std::invalid_argument("GPModel: need at least one observation");
  if (targets.size() != n) throw std::invalid_argument("GPModel: target count mismatch");
  if (kernel_.lengthscales.size() != inputs_.cols()) throw std::invalid_argument("GPModel: lengthscale count mismatch");
  if (!inputs_.allFinite() || !targets.allFinite()) throw std::invalid_argument("GPModel: non-finite training data");
  if (!(kernel_.signal_variance > 0.0) || !(kernel_.noise_variance >= 0.0)) {
    throw std::invalid_argument("GPModel: variances must be positive");
  }

  targets_ = standardize(targets, offset_, scale_);
  factorize();
}

void GPModel::factorize() {
  const Eigen::MatrixXd gram = matern52_gram(inputs_, inputs_, kernel_);
  for (double jitter : kJitterLadder) {
    Eigen::MatrixXd cov = gram;
    cov.diagonal().array() += kernel_.noise_variance + jitter;
    const Eigen::LLT<Eigen::MatrixXd> llt(cov);
    if (!usable_factor(llt, cov.diagonal().maxCoeff())) continue;
    jitter_ = jitter;
    chol_ = llt.matrixL();
    alpha_ = llt.solve(targets_);
    return;
  }
  throw NumericalError("GPModel: Gram matrix not positive definite after jitter 1e-2");
}

PosteriorGaussian GPModel::posterior(const Eigen::MatrixXd& xq) const {
  if (xq.cols() != inputs_.cols()) throw std::invalid_argument("posterior: query dimension mismatch");
  const Eigen::MatrixXd cross = matern52_gram(inputs_, xq, kernel_);
  const Eigen::MatrixXd v = chol_.triangularView<Eigen::Lower>().solve(cross);
  PosteriorGaussian out;
  out.mean = (cross.transpose() * alpha_).array() * scale_ + offset_;
  Eigen::MatrixXd cov = matern52_gram(xq, xq, kernel_);
  cov.noalias() -= v.transpose() * v;
  out.covariance = 0.5 * (cov + cov.transpose()) * (scale_ * scale_);
  return out;
}

GPModel GPModel::fantasize(const Eigen::VectorXd& x_new) const {
  if (x_new.size() != inputs_.cols()) throw std::invalid_argument("fantasize: input dimension mismatch");
  const Eigen::Index n = inputs_.rows();
  const Eigen::VectorXd cross = matern52_gram(inputs_, x_new.transpose(), kernel_).col(0);
  const Eigen::VectorXd v = chol_.triangularView<Eigen::Lower>().solve(cross);
  const double mean_std = cross.dot(alpha_);

  GPModel out;
  out.kernel_ = kernel_;
  out.offset_ = offset_;
  out.scale_ = scale_;
  out.jitter_ = jitter_;
  out.inputs_.resize(n + 1, inputs_.cols());
  out.inputs_.topRows(n) = inputs_;
  out.inputs_.row(n) = x_new.transpose();
  out.targets_.resize(n + 1);
  out.targets_.head(n) = targets_;
  out.targets_[n] = mean_std;

  const double prior = kernel_.signal_variance + kernel_.noise_variance + jitter_;
  const double pivot = prior - v.squaredNorm();
  if (pivot > 1e-12 * prior) {
    // Rank-one extension of the factor. The pseudo-target equals the current
    // posterior mean, so the extended weight vector is (alpha, 0) exactly.
    out.chol_ = Eigen::MatrixXd::Zero(n + 1, n + 1);
    out.chol_.topLeftCorner(n, n) = chol_;
    out.chol_.row(n).head(n) = v.transpose();
    out.chol_(n, n) = std::sqrt(pivot);
    out.alpha_.resize(n + 1);
    out.alpha_.head(n) = alpha_;
    out.alpha_[n] = 0.0;
  } else {
    out.factorize();
  }
  return out;
}

namespace {

struct Evaluation {
  double value = -std::numeric_limits<double>::infinity();
  Eigen::VectorXd gradient;
  bool ok = false;
};

Evaluation evaluate(const Eigen::VectorXd& theta, const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
  Evaluation e;
  try {
    LogLikelihood ll = log_marginal_likelihood(KernelParams::from_log(theta), x, y);
    if (std::isfinite(ll.value) && ll.gradient.allFinite()) {
      e.value = ll.value;
      e.gradient = std::move(ll.gradient);
      e.ok = true;
    }
  } catch (const NumericalError&) {
  }
  return e;
}

// Projected quasi-Newton ascent on a box. Returns the final point; `best`
// receives its log-likelihood.
Eigen::VectorXd ascend(Eigen::VectorXd theta, const Eigen::VectorXd& lo, const Eigen::VectorXd& hi,
                       const Eigen::MatrixXd& x, const Eigen::VectorXd& y, double& best) {
  constexpr int kMaxIterations = 100;
  constexpr double kMaxStep = 2.0;
  const Eigen::Index p = theta.size();

  theta = theta.cwiseMax(lo).cwiseMin(hi);
  Evaluation cur = evaluate(theta, x, y);
  if (!cur.ok) {
    best = -std::numeric_limits<double>::infinity();
    return theta;
  }
  Eigen::MatrixXd hinv = Eigen::MatrixXd::Identity(p, p);

  for (int it = 0; it < kMaxIterations; ++it) {
    // Coordinates pinned at a bound with the gradient pointing outward stay put.
    Eigen::VectorXd g = cur.gradient;
    for (Eigen::Index i = 0; i < p; ++i) {
      if ((theta[i] <= lo[i] && g[i] < 0.0) || (theta[i] >= hi[i] && g[i] > 0.0)) g[i] = 0.0;
    }
    if (g.lpNorm<Eigen::Infinity>() < 1e-6) break;

    Eigen::VectorXd dir = hinv * g;
    for (Eigen::Index i = 0; i < p; ++i) {
      if (g[i] == 0.0) dir[i] = 0.0;
    }
    if (dir.dot(g) <= 0.0) {
      hinv.setIdentity();
      dir = g;
    }
    const double longest = dir.lpNorm<Eigen::Infinity>();
    if (longest > kMaxStep) dir *= kMaxStep / longest;

    double step = 1.0;
    Evaluation next;
    Eigen::VectorXd candidate;
    bool accepted = false;
    for (int ls = 0; ls < 30; ++ls) {
      candidate = (theta + step * dir).cwiseMax(lo).cwiseMin(hi);
      next = evaluate(candidate, x, y);
      if (next.ok && next.value >= cur.value + 1e-4 * g.dot(candidate - theta)) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;

    const Eigen::VectorXd s = candidate - theta;
    const Eigen::VectorXd yk = cur.gradient - next.gradient;  // gradient of −LML
    const double sy = s.dot(yk);
    const double improvement = next.value - cur.value;
    theta = candidate;
    cur = std::move(next);
    if (sy > 1e-10) {
      const double rho = 1.0 / sy;
      const Eigen::MatrixXd left = Eigen::MatrixXd::Identity(p, p) - rho * s * yk.transpose();
      hinv = left * hinv * left.transpose() + rho * s * s.transpose();
    }
    if (improvement < 1e-9 * (1.0 + std::abs(cur.value))) break;
  }
  best = cur.value;
  return theta;
}

}  // namespace

GPModel fit_gp(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, int restarts, std::uint64_t seed,
               const HyperparameterBounds& bounds) {
  const Eigen::Index n = x.rows();
  const Eigen::Index d = x.cols();
  if (n < 2) throw std::invalid_argument("fit_gp: need at least two observations");
  if (y.size() != n) throw std::invalid_argument("fit_gp: target count mismatch");
  if (restarts < 1) throw std::invalid_argument("fit_gp: restarts must be positive");

  double offset = 0.0, scale = 1.0;
  const Eigen::VectorXd ys = standardize(y, offset, scale);

  Eigen::VectorXd lo(d + 2), hi(d + 2);
  lo.head(d).setConstant(std::log(bounds.lengthscale_min));
  hi.head(d).setConstant(std::log(bounds.lengthscale_max));
  lo[d] = std::log(bounds.signal_min);
  hi[d] = std::log(bounds.signal_max);
  lo[d + 1] = std::log(bounds.noise_min);
  hi[d + 1] = std::log(bounds.noise_max);

  std::mt19937_64 rng(seed);
  auto log_uniform = [&rng](double a, double b) {
    return std::uniform_real_distribution<double>(std::log(a), std::log(b))(rng);
  };

  double best_value = -std::numeric_limits<double>::infinity();
  Eigen::VectorXd best_theta;
  for (int r = 0; r < restarts; ++r) {
    Eigen::VectorXd start(d + 2);
    if (r == 0) {
      start.head(d).setConstant(std::log(0.5));
      start[d] = 0.0;
      start[d + 1] = std::log(1e-3);
    } else {
      for (Eigen::Index i = 0; i < d; ++i) start[i] = log_uniform(0.05, 5.0);
      start[d] = log_uniform(0.1, 10.0);
      start[d + 1] = log_uniform(1e-6, 1e-1);
    }
    double value = 0.0;
    Eigen::VectorXd theta = ascend(start, lo, hi, x, ys, value);
    if (value > best_value) {
      best_value = value;
      best_theta = std::move(theta);
    }
  }
  if (!std::isfinite(best_value)) {
    throw NumericalError("fit_gp: log-likelihood non-finite at every start");
  }
  return GPModel(KernelParams::from_log(best_theta), x, y);
}

BaseSamples::BaseSamples(std::size_t n_samples, std::size_t max_points, std::size_t n_objectives,
                         std::uint64_t seed)
    : k_(n_objectives) {
  if (n_samples == 0 || max_points == 0 || n_objectives == 0) {
    throw std::invalid_argument("BaseSamples: counts must be positive");
  }
  z_ = sobol_normal(static_cast<int>(max_points * n_objectives), n_samples, seed);
}

SampleTensor joint_sample(std::span<const GPModel> models, const Eigen::MatrixXd& xq, const BaseSamples& base) {
  const std::size_t m = static_cast<std::size_t>(xq.rows());
  const std::size_t k = models.size();
  const std::size_t n = base.samples();
  if (n == 0) throw std::invalid_argument("joint_sample: need at least one sample");
  if (base.objectives() != k || base.max_points() < m) {
    throw std::invalid_argument("joint_sample: base samples too small for " + std::to_string(m) + " points × " +
                                std::to_string(k) + " objectives");
  }
  SampleTensor out(n, m, k);
  for (std::size_t obj = 0; obj < k; ++obj) {
    const PosteriorGaussian post = models[obj].posterior(xq);
    if (!post.mean.allFinite() || !post.covariance.allFinite()) {
      throw NumericalError("joint_sample: non-finite posterior");
    }
    const Eigen::MatrixXd l = psd_cholesky(post.covariance);
    for (std::size_t s = 0; s < n; ++s) {
      for (std::size_t j = 0; j < m; ++j) {
        double v = post.mean[static_cast<Eigen::Index>(j)];
        for (std::size_t i = 0; i <= j; ++i) v += l(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) * base(s, i, obj);
        out(s, j, obj) = v;
      }
    }
  }
  return out;
}

SampleTensor joint_sample(std::span<const GPModel> models, const Eigen::MatrixXd& xq, std::size_t n_samples,
                          std::uint64_t seed) {
  if (n_samples == 0) throw std::invalid_argument("joint_sample: need at least one sample");
  const BaseSamples base(n_samples, std::max<std::size_t>(1, static_cast<std::size_t>(xq.rows())), models.size(),
                         seed);
  return joint_sample(models, xq, base);
}

}  // namespace nmmo
