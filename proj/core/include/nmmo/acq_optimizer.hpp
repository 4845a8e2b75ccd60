#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

#include <Eigen/Core>

#include "nmmo/sobol.hpp"

namespace nmmo {

struct OptBudget {
  std::size_t n_restarts = 8;
  std::size_t n_raw_candidates = 256;
  std::size_t max_evals_per_restart = 400;
  std::uint64_t seed = 0;
};

struct PointOptimum {
  Eigen::VectorXd x;
  double value = 0.0;
};

struct JointOptimum {
  Eigen::VectorXd x;
  /// (H−1)×d lookahead rows.
  Eigen::MatrixXd lookahead;
  double value = 0.0;
};

struct GridOptimum {
  Eigen::VectorXd x;
  Eigen::Index index = 0;
  double value = 0.0;
};

using PointObjective = std::function<double(const Eigen::VectorXd&)>;
using JointObjective = std::function<double(const Eigen::VectorXd&, const Eigen::MatrixXd&)>;

/// Scores n_raw_candidates Sobol points, then refines the best n_restarts by
/// coordinate pattern search (steps halve from 0.1 to 1e-3, iterates are
/// clamped to the unit cube). The returned value is the objective at x.
/// Throws std::runtime_error if every raw candidate is non-finite.
PointOptimum maximize_pointwise(const PointObjective& af, int d, const OptBudget& budget);

/// Same strategy on the concatenated H·d vector; row 0 is x, rows 1.. are the
/// lookahead. H = 1 delegates to maximize_pointwise with the same budget.
JointOptimum maximize_joint(const JointObjective& af, int d, int horizon, const OptBudget& budget);

/// Exhaustive argmax over grid rows, ties to the lowest index.
GridOptimum maximize_on_grid(const PointObjective& af, const Eigen::MatrixXd& grid);

}  // namespace nmmo
