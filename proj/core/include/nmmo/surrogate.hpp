#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

namespace nmmo {

/// Raised when a covariance matrix cannot be factorized even after jitter
/// escalation, or when every fitting start produced a non-finite objective.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Matérn 5/2 kernel with one lengthscale per input dimension.
struct KernelParams {
  Eigen::VectorXd lengthscales;
  double signal_variance = 1.0;
  double noise_variance = 1e-6;

  /// Packs (log ℓ_1..ℓ_d, log σ², log σ_n²).
  Eigen::VectorXd to_log() const;
  static KernelParams from_log(const Eigen::VectorXd& theta);
};

/// σ²(1 + √5ρ + 5ρ²/3)·exp(−√5ρ), ρ² = Σ ((x_i − x2_i)/ℓ_i)².
double matern52_ard(const Eigen::Ref<const Eigen::VectorXd>& x, const Eigen::Ref<const Eigen::VectorXd>& x2,
                    const KernelParams& k);

/// Cross-covariance between the rows of a and the rows of b (no noise).
Eigen::MatrixXd matern52_gram(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, const KernelParams& k);

struct LogLikelihood {
  double value = 0.0;
  /// Derivative with respect to KernelParams::to_log().
  Eigen::VectorXd gradient;
};

/// Gaussian log-evidence of y under a zero-mean GP with kernel k plus noise.
/// No jitter is added: a singular Gram matrix raises NumericalError.
LogLikelihood log_marginal_likelihood(const KernelParams& k, const Eigen::MatrixXd& x, const Eigen::VectorXd& y);

struct PosteriorGaussian {
  Eigen::VectorXd mean;
  Eigen::MatrixXd covariance;
};

/// Box bounds for maximum-likelihood fitting, in natural units.
struct HyperparameterBounds {
  double lengthscale_min = 1e-3;
  double lengthscale_max = 10.0;
  double signal_min = 1e-3;
  double signal_max = 1e3;
  double noise_min = 1e-6;
  double noise_max = 1.0;
};

/// Exact GP regression on one objective. Targets are standardized at
/// construction; predictions are returned in output units. Immutable after
/// construction, so concurrent reads are safe.
class GPModel {
 public:
  /// Standardizes y and factorizes the Gram matrix (jitter escalation
  /// 1e-6 → 1e-4 → 1e-2 when needed).
  GPModel(KernelParams kernel, Eigen::MatrixXd inputs, const Eigen::VectorXd& targets);

  const KernelParams& kernel() const { return kernel_; }
  const Eigen::MatrixXd& train_inputs() const { return inputs_; }
  /// Standardized training targets.
  const Eigen::VectorXd& train_targets() const { return targets_; }
  double output_mean() const { return offset_; }
  double output_scale() const { return scale_; }
  double jitter() const { return jitter_; }
  int dim() const { return static_cast<int>(inputs_.cols()); }
  Eigen::Index size() const { return inputs_.rows(); }

  /// Predictive mean and joint covariance at the rows of xq, output units.
  PosteriorGaussian posterior(const Eigen::MatrixXd& xq) const;

  /// Conditions on the pseudo-observation (x_new, current posterior mean),
  /// including the model's own noise term.
  GPModel fantasize(const Eigen::VectorXd& x_new) const;

 private:
  GPModel() = default;
  void factorize();

  KernelParams kernel_;
  Eigen::MatrixXd inputs_;
  Eigen::VectorXd targets_;
  double offset_ = 0.0;
  double scale_ = 1.0;
  double jitter_ = 0.0;
  Eigen::MatrixXd chol_;  // lower triangular
  Eigen::VectorXd alpha_;
};

/// Maximum-likelihood fit: multi-start projected quasi-Newton ascent in
/// log-space inside `bounds`. Deterministic given seed.
GPModel fit_gp(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, int restarts, std::uint64_t seed,
               const HyperparameterBounds& bounds = {});

inline PosteriorGaussian posterior(const GPModel& model, const Eigen::MatrixXd& xq) { return model.posterior(xq); }
inline GPModel fantasize(const GPModel& model, const Eigen::VectorXd& x_new) { return model.fantasize(x_new); }

/// Lower-triangular L with L·Lᵀ ≈ c for a symmetric PSD c. Pivots below
/// 1e-12·max(diag) are treated as zero and their columns dropped, so
/// rank-deficient matrices (duplicate inputs, zero variance) are handled.
Eigen::MatrixXd psd_cholesky(const Eigen::MatrixXd& c);

/// Posterior draws at m query points for K objectives, laid out so that one
/// sample is a contiguous m×K row-major block.
class SampleTensor {
 public:
  SampleTensor() = default;
  SampleTensor(std::size_t n_samples, std::size_t n_points, std::size_t n_objectives)
      : n_(n_samples), m_(n_points), k_(n_objectives), data_(n_samples * n_points * n_objectives) {}

  std::size_t samples() const { return n_; }
  std::size_t points() const { return m_; }
  std::size_t objectives() const { return k_; }

  double& operator()(std::size_t s, std::size_t j, std::size_t k) { return data_[(s * m_ + j) * k_ + k]; }
  double operator()(std::size_t s, std::size_t j, std::size_t k) const { return data_[(s * m_ + j) * k_ + k]; }

  std::span<const double> sample(std::size_t s) const { return {data_.data() + s * m_ * k_, m_ * k_}; }

 private:
  std::size_t n_ = 0, m_ = 0, k_ = 0;
  std::vector<double> data_;
};

/// Fixed standard-normal base draws z(s, j, k) for reparameterized sampling;
/// column j·K + k of the underlying matrix feeds point j, objective k.
class BaseSamples {
 public:
  BaseSamples() = default;
  /// Quasi-random (scrambled Sobol) normals for up to max_points points.
  BaseSamples(std::size_t n_samples, std::size_t max_points, std::size_t n_objectives, std::uint64_t seed);

  std::size_t samples() const { return static_cast<std::size_t>(z_.rows()); }
  std::size_t max_points() const { return k_ == 0 ? 0 : static_cast<std::size_t>(z_.cols()) / k_; }
  std::size_t objectives() const { return k_; }
  double operator()(std::size_t s, std::size_t j, std::size_t k) const {
    return z_(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(j * k_ + k));
  }

 private:
  std::size_t k_ = 0;
  Eigen::MatrixXd z_;
};

/// Joint posterior draws mean + L·z at the rows of xq, independently per
/// objective, using the given base draws.
SampleTensor joint_sample(std::span<const GPModel> models, const Eigen::MatrixXd& xq, const BaseSamples& base);

/// Same, with base draws generated from seed.
SampleTensor joint_sample(std::span<const GPModel> models, const Eigen::MatrixXd& xq, std::size_t n_samples,
                          std::uint64_t seed);

}  // namespace nmmo
