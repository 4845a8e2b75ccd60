#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "nmmo/acq_optimizer.hpp"
#include "nmmo/pareto.hpp"
#include "nmmo/problems.hpp"
#include "nmmo/surrogate.hpp"

namespace nmmo {

enum class Method { ehvi, nmmo_nested, nmmo_joint, binom };

/// Accepts ehvi, nmmo_nested, nmmo_joint, binom (case-insensitive, '-' or '_').
Method parse_method(std::string_view name);
std::string to_string(Method m);

struct RunConfig {
  std::string problem = "zdt3";
  Method method = Method::ehvi;
  int horizon_cap = 1;
  /// BO iterations T, not counting the initial design.
  int iterations = 65;
  int init_points = 5;
  std::uint64_t seed = 0;

  std::size_t mc_samples = 128;
  std::size_t grid_size = 512;
  std::size_t inner_restarts = 1;
  int gp_restarts = 8;
  OptBudget pointwise{8, 256, 400, 0};
  /// Used for the joint and binom searches; evaluations per restart are
  /// multiplied by the effective horizon.
  OptBudget batch{8, 512, 400, 0};

  /// Throws std::invalid_argument on T < 1, N0 < 2, H < 1 or zero budgets.
  void validate() const;
};

struct BOState {
  Problem problem;
  /// Observed inputs (unit cube) and outputs (maximization), one row each.
  Eigen::MatrixXd inputs;
  Eigen::MatrixXd outputs;
  ParetoFront front;
  std::vector<GPModel> models;
  /// Completed BO iterations (initial design excluded).
  int iteration = 0;
  std::uint64_t rng_seed = 0;

  Eigen::Index size() const { return inputs.rows(); }
  double hypervolume() const { return nmmo::hypervolume(front); }
};

struct Suggestion {
  Eigen::VectorXd x;
  int horizon = 1;
  /// True when the acquisition optimizer failed and the best raw Sobol
  /// candidate was used instead.
  bool fallback = false;
};

struct TraceRow {
  int iteration = 0;
  int horizon = 1;
  Eigen::VectorXd x_unit;
  ObjectiveVector y;
  double improvement = 0.0;
  double hypervolume = 0.0;
  double wall_seconds = 0.0;
  bool fallback = false;
};

struct RunRecord {
  RunConfig config;
  double initial_hypervolume = 0.0;
  std::vector<TraceRow> rows;
  /// Final non-dominated outputs and one input producing each.
  std::vector<ObjectiveVector> pareto_front;
  Eigen::MatrixXd pareto_set;
};

/// min(cap, T − t + 1) for 1 ≤ t ≤ T.
int horizon(int t, int total, int cap);

/// Sobol initial design of cfg.init_points evaluations, fitted models, front.
BOState init_state(const RunConfig& cfg);

/// Next input to evaluate. Pure: repeated calls on the same state agree.
Suggestion suggest(const BOState& state, const RunConfig& cfg);

/// Appends (x, y), refits every model and updates the front. y is in the
/// maximization convention.
BOState observe(BOState state, const Eigen::VectorXd& x, const ObjectiveVector& y, const RunConfig& cfg);

/// suggest, evaluate, observe; the row carries the timing of all three.
std::pair<BOState, TraceRow> step(BOState state, const RunConfig& cfg);

RunRecord run_bo(const RunConfig& cfg);

}  // namespace nmmo
