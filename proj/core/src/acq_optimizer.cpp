#include "nmmo/acq_optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace nmmo {
namespace {

constexpr double kInitialStep = 0.1;
constexpr double kFinalStep = 1e-3;

double finite_or_lowest(double v) { return std::isfinite(v) ? v : -std::numeric_limits<double>::infinity(); }

// Opportunistic compass search: sweep the coordinates, accept the first
// improving ± move, halve the step after a sweep without progress.
void pattern_search(const PointObjective& af, Eigen::VectorXd& x, double& fx, std::size_t max_evals) {
  std::size_t evals = 0;
  double step = kInitialStep;
  while (step >= kFinalStep && evals < max_evals) {
    bool improved = false;
    for (Eigen::Index i = 0; i < x.size() && evals < max_evals; ++i) {
      for (double sign : {1.0, -1.0}) {
        const double moved = std::clamp(x[i] + sign * step, 0.0, 1.0);
        if (moved == x[i]) continue;
        Eigen::VectorXd trial = x;
        trial[i] = moved;
        const double ft = finite_or_lowest(af(trial));
        ++evals;
        if (ft > fx) {
          x = std::move(trial);
          fx = ft;
          improved = true;
          break;
        }
        if (evals >= max_evals) break;
      }
    }
    if (!improved) step *= 0.5;
  }
}

}  // namespace

PointOptimum maximize_pointwise(const PointObjective& af, int d, const OptBudget& budget) {
  if (d <= 0) throw std::invalid_argument("maximize_pointwise: dimension must be positive");
  if (budget.n_raw_candidates == 0 || budget.n_restarts == 0 || budget.max_evals_per_restart == 0) {
    throw std::invalid_argument("maximize_pointwise: budget counts must be positive");
  }
  const Eigen::MatrixXd raw = sobol_candidates(d, budget.n_raw_candidates, budget.seed);
  std::vector<double> values(static_cast<std::size_t>(raw.rows()));
  for (Eigen::Index i = 0; i < raw.rows(); ++i) {
    values[static_cast<std::size_t>(i)] = finite_or_lowest(af(raw.row(i).transpose()));
  }
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  if (!std::isfinite(values[order.front()])) {
    throw std::runtime_error("maximize_pointwise: acquisition non-finite at every raw candidate");
  }

  PointOptimum best{raw.row(static_cast<Eigen::Index>(order.front())).transpose(), values[order.front()]};
  const std::size_t starts = std::min(budget.n_restarts, order.size());
  for (std::size_t r = 0; r < starts; ++r) {
    if (!std::isfinite(values[order[r]])) break;
    Eigen::VectorXd x = raw.row(static_cast<Eigen::Index>(order[r])).transpose();
    double fx = values[order[r]];
    pattern_search(af, x, fx, budget.max_evals_per_restart);
    if (fx > best.value) best = {std::move(x), fx};
  }
  return best;
}

JointOptimum maximize_joint(const JointObjective& af, int d, int horizon, const OptBudget& budget) {
  if (horizon < 1) throw std::invalid_argument("maximize_joint: horizon must be at least 1");
  if (d <= 0) throw std::invalid_argument("maximize_joint: dimension must be positive");
  const Eigen::MatrixXd none(0, d);
  if (horizon == 1) {
    PointOptimum p = maximize_pointwise([&](const Eigen::VectorXd& x) { return af(x, none); }, d, budget);
    return {std::move(p.x), none, p.value};
  }

  // Row-major unpacking: slot h occupies entries [h·d, (h+1)·d).
  auto split = [d, horizon](const Eigen::VectorXd& z, Eigen::VectorXd& x, Eigen::MatrixXd& rest) {
    x = z.head(d);
    rest.resize(horizon - 1, d);
    for (int h = 1; h < horizon; ++h) rest.row(h - 1) = z.segment(static_cast<Eigen::Index>(h) * d, d).transpose();
  };
  const PointObjective packed = [&](const Eigen::VectorXd& z) {
    Eigen::VectorXd x;
    Eigen::MatrixXd rest;
    split(z, x, rest);
    return af(x, rest);
  };
  const PointOptimum p = maximize_pointwise(packed, d * horizon, budget);
  JointOptimum out;
  split(p.x, out.x, out.lookahead);
  out.value = p.value;
  return out;
}

GridOptimum maximize_on_grid(const PointObjective& af, const Eigen::MatrixXd& grid) {
  if (grid.rows() == 0) throw std::invalid_argument("maximize_on_grid: grid is empty");
  GridOptimum best;
  best.value = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < grid.rows(); ++i) {
    const double v = finite_or_lowest(af(grid.row(i).transpose()));
    if (v > best.value) {
      best.value = v;
      best.index = i;
    }
  }
  if (!std::isfinite(best.value)) throw std::runtime_error("maximize_on_grid: acquisition non-finite on every row");
  best.x = grid.row(best.index).transpose();
  return best;
}

}  // namespace nmmo
