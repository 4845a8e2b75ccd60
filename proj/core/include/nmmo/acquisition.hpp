#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>

#include <Eigen/Core>

#include "nmmo/pareto.hpp"
#include "nmmo/surrogate.hpp"

namespace nmmo {

/// Monte-Carlo budget. When `base_samples` is set it is used as-is (common
/// random numbers across calls); otherwise quasi-random draws are generated
/// from `seed`, with identical leading columns for any batch size.
struct MCConfig {
  std::size_t n_samples = 128;
  std::uint64_t seed = 0;
  std::shared_ptr<const BaseSamples> base_samples;
};

struct LookaheadConfig {
  /// Horizon H scored by the acquisition (the engine passes the effective,
  /// truncated horizon here).
  int horizon_cap = 1;
  /// Size M of the Sobol grid used by the nested method.
  std::size_t grid_size = 512;
  /// Greedy inner passes, each seeded with a different best first pick.
  std::size_t inner_restarts = 1;
  std::uint64_t grid_seed = 0;
};

/// Rows of xb sorted lexicographically with exact duplicates removed. Batches
/// scored as sets (lookahead and binom terms) go through this first, so
/// their value ignores row order and repeated rows.
Eigen::MatrixXd canonical_set(const Eigen::MatrixXd& xb);

/// Hypervolume-improvement acquisitions over one fixed front and model set.
/// Construction precomputes the front's volume and resolves the base samples
/// once; every evaluation afterwards is a pure function of its arguments.
class HypervolumeAcquisition {
 public:
  /// `max_points` is the largest batch that will be scored.
  HypervolumeAcquisition(std::span<const GPModel> models, const ParetoFront& front, const MCConfig& mc,
                         std::size_t max_points);

  std::span<const GPModel> models() const { return models_; }
  const ParetoFront& front() const { return front_; }
  const BaseSamples& base_samples() const { return *base_; }

  /// Mean HVI of posterior draws at x.
  double ehvi(const Eigen::VectorXd& x) const;

  /// Mean joint HV gain of posterior draws over the rows of xb, keeping the
  /// within-objective correlations. Uses `models` in place of the stored ones
  /// when given (fantasy models).
  double behvi(const Eigen::MatrixXd& xb) const;
  double behvi(std::span<const GPModel> models, const Eigen::MatrixXd& xb) const;

  /// EHVI(x) + max over sets X' of at most horizon − 1 grid rows of the set
  /// BEHVI under the fantasy at x. The max is exhaustive when there are at
  /// most 4096 such sets and greedy (one row at a time) otherwise.
  double nested(const Eigen::VectorXd& x, const Eigen::MatrixXd& grid, int horizon,
                std::size_t inner_restarts = 1) const;

  /// The maximizing lookahead set of nested(), in canonical order.
  Eigen::MatrixXd nested_batch(const Eigen::VectorXd& x, const Eigen::MatrixXd& grid, int horizon,
                               std::size_t inner_restarts = 1) const;

  /// EHVI(x) + set BEHVI of xp under the fantasy at x.
  double joint(const Eigen::VectorXd& x, const Eigen::MatrixXd& xp) const;

  /// Set BEHVI of the whole horizon.
  double binom(const Eigen::MatrixXd& xb) const;

  /// Row of xb with the largest EHVI, ties to the lowest index.
  Eigen::VectorXd binom_pick(const Eigen::MatrixXd& xb) const;

 private:
  std::vector<GPModel> fantasy(const Eigen::VectorXd& x) const;
  double set_value(std::span<const GPModel> models, const Eigen::MatrixXd& xb) const;
  double lookahead(std::span<const GPModel> models, const Eigen::MatrixXd& grid, int count,
                   std::size_t inner_restarts, Eigen::MatrixXd* chosen) const;
  double exhaustive(std::span<const GPModel> models, const Eigen::MatrixXd& grid, int count,
                    Eigen::MatrixXd* chosen) const;

  std::span<const GPModel> models_;
  ParetoFront front_;
  HypervolumeAccumulator volume_;
  std::shared_ptr<const BaseSamples> base_;
};

double ehvi(std::span<const GPModel> models, const Eigen::VectorXd& x, const ParetoFront& front,
            const MCConfig& mc);

/// Closed-form EHVI for two independent Gaussian objectives, summed over the
/// vertical strips of the non-dominated region. Throws for K ≠ 2.
double ehvi_exact_2d(std::span<const GPModel> models, const Eigen::VectorXd& x, const ParetoFront& front);

/// Same, from the predictive means and standard deviations directly.
double ehvi_exact_2d(const Eigen::Vector2d& mean, const Eigen::Vector2d& sd, const ParetoFront& front);

double behvi(std::span<const GPModel> models, const Eigen::MatrixXd& xb, const ParetoFront& front,
             const MCConfig& mc);

/// Uses a Sobol grid of cfg.grid_size points drawn from cfg.grid_seed.
double nested_af(std::span<const GPModel> models, const Eigen::VectorXd& x, const ParetoFront& front,
                 const LookaheadConfig& cfg, const MCConfig& mc);

double nested_af(std::span<const GPModel> models, const Eigen::VectorXd& x, const ParetoFront& front,
                 const LookaheadConfig& cfg, const MCConfig& mc, const Eigen::MatrixXd& grid);

double joint_af(std::span<const GPModel> models, const Eigen::VectorXd& x, const Eigen::MatrixXd& xp,
                const ParetoFront& front, const MCConfig& mc);

double binom_af(std::span<const GPModel> models, const Eigen::MatrixXd& xb, const ParetoFront& front,
                const MCConfig& mc);

Eigen::VectorXd binom_pick(std::span<const GPModel> models, const Eigen::MatrixXd& xb, const ParetoFront& front,
                           const MCConfig& mc);

}  // namespace nmmo
