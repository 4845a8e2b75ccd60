#include "nmmo/engine.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>

#include "nmmo/acquisition.hpp"
#include "nmmo/sobol.hpp"

namespace nmmo {
namespace {

// Stream tags for derive_seed.
enum Purpose : std::uint64_t { kInitDesign = 1, kGpFit = 2, kMonteCarlo = 3, kOptimizer = 4, kGrid = 5, kFallback = 6 };

std::vector<GPModel> fit_models(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y, const RunConfig& cfg,
                                std::uint64_t seed) {
  std::vector<GPModel> models;
  models.reserve(static_cast<std::size_t>(y.cols()));
  for (Eigen::Index k = 0; k < y.cols(); ++k) {
    const auto s = derive_seed(seed, {kGpFit, static_cast<std::uint64_t>(x.rows()), static_cast<std::uint64_t>(k)});
    models.push_back(fit_gp(x, y.col(k), cfg.gp_restarts, s));
  }
  return models;
}

Eigen::MatrixXd stack(const Eigen::VectorXd& x, const Eigen::MatrixXd& rest) {
  Eigen::MatrixXd out(rest.rows() + 1, x.size());
  out.row(0) = x.transpose();
  out.bottomRows(rest.rows()) = rest;
  return out;
}

Eigen::VectorXd optimize_acquisition(const BOState& state, const RunConfig& cfg, int t, int h) {
  const int d = state.problem.d;
  const std::uint64_t seed = state.rng_seed;
  const auto tt = static_cast<std::uint64_t>(t);

  MCConfig mc;
  mc.n_samples = cfg.mc_samples;
  mc.base_samples = std::make_shared<const BaseSamples>(cfg.mc_samples, static_cast<std::size_t>(h),
                                                        static_cast<std::size_t>(state.problem.k),
                                                        derive_seed(seed, {kMonteCarlo, tt}));
  const HypervolumeAcquisition acq(state.models, state.front, mc, static_cast<std::size_t>(h));

  OptBudget point = cfg.pointwise;
  point.seed = derive_seed(seed, {kOptimizer, tt});
  // With one step left every method is the myopic search.
  if (h == 1 || cfg.method == Method::ehvi) {
    return maximize_pointwise([&](const Eigen::VectorXd& x) { return acq.ehvi(x); }, d, point).x;
  }

  OptBudget batch = cfg.batch;
  batch.seed = point.seed;
  batch.max_evals_per_restart *= static_cast<std::size_t>(h);
  switch (cfg.method) {
    case Method::nmmo_nested: {
      const Eigen::MatrixXd grid = sobol_candidates(d, cfg.grid_size, derive_seed(seed, {kGrid, tt}));
      return maximize_on_grid([&](const Eigen::VectorXd& x) { return acq.nested(x, grid, h, cfg.inner_restarts); },
                              grid)
          .x;
    }
    case Method::nmmo_joint:
      return maximize_joint([&](const Eigen::VectorXd& x, const Eigen::MatrixXd& xp) { return acq.joint(x, xp); }, d,
                            h, batch)
          .x;
    case Method::binom: {
      const JointOptimum best = maximize_joint(
          [&](const Eigen::VectorXd& x, const Eigen::MatrixXd& xp) { return acq.binom(stack(x, xp)); }, d, h, batch);
      return acq.binom_pick(stack(best.x, best.lookahead));
    }
    case Method::ehvi:
      break;
  }
  throw std::logic_error("unhandled method");
}

Eigen::VectorXd fallback_candidate(const BOState& state, const RunConfig& cfg, int t) {
  const Eigen::MatrixXd raw =
      sobol_candidates(state.problem.d, cfg.pointwise.n_raw_candidates,
                       derive_seed(state.rng_seed, {kFallback, static_cast<std::uint64_t>(t)}));
  Eigen::Index best = 0;
  double best_value = -std::numeric_limits<double>::infinity();
  try {
    MCConfig mc;
    mc.n_samples = cfg.mc_samples;
    mc.seed = derive_seed(state.rng_seed, {kMonteCarlo, static_cast<std::uint64_t>(t)});
    const HypervolumeAcquisition acq(state.models, state.front, mc, 1);
    for (Eigen::Index i = 0; i < raw.rows(); ++i) {
      const double v = acq.ehvi(raw.row(i).transpose());
      if (std::isfinite(v) && v > best_value) {
        best_value = v;
        best = i;
      }
    }
  } catch (const std::exception&) {
    // Unscorable: take the first candidate.
  }
  return raw.row(best).transpose();
}

}  // namespace

Method parse_method(std::string_view name) {
  std::string key;
  for (char c : name) key.push_back(c == '-' ? '_' : static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (key == "ehvi") return Method::ehvi;
  if (key == "nmmo_nested" || key == "nested") return Method::nmmo_nested;
  if (key == "nmmo_joint" || key == "joint") return Method::nmmo_joint;
  if (key == "binom") return Method::binom;
  throw std::invalid_argument("unknown method '" + std::string(name) +
                              "'; supported: ehvi, nmmo_nested, nmmo_joint, binom");
}

std::string to_string(Method m) {
  switch (m) {
    case Method::ehvi: return "ehvi";
    case Method::nmmo_nested: return "nmmo_nested";
    case Method::nmmo_joint: return "nmmo_joint";
    case Method::binom: return "binom";
  }
  return "unknown";
}

void RunConfig::validate() const {
  if (iterations < 1) throw std::invalid_argument("iterations must be at least 1");
  if (init_points < 2) throw std::invalid_argument("init_points must be at least 2");
  if (horizon_cap < 1) throw std::invalid_argument("horizon cap must be at least 1");
  if (mc_samples == 0) throw std::invalid_argument("mc_samples must be positive");
  if (grid_size == 0) throw std::invalid_argument("grid_size must be positive");
  if (gp_restarts < 1) throw std::invalid_argument("gp_restarts must be at least 1");
  for (const OptBudget* b : {&pointwise, &batch}) {
    if (b->n_restarts == 0 || b->n_raw_candidates == 0 || b->max_evals_per_restart == 0) {
      throw std::invalid_argument("optimizer budget counts must be positive");
    }
  }
}

int horizon(int t, int total, int cap) {
  if (t < 1 || t > total) {
    throw std::out_of_range("horizon: iteration " + std::to_string(t) + " outside [1, " + std::to_string(total) + "]");
  }
  if (cap < 1) throw std::invalid_argument("horizon: cap must be at least 1");
  return std::min(cap, total - t + 1);
}

BOState init_state(const RunConfig& cfg) {
  cfg.validate();
  Problem problem = make_problem(cfg.problem);
  const Eigen::MatrixXd x =
      sobol_candidates(problem.d, static_cast<std::size_t>(cfg.init_points), derive_seed(cfg.seed, {kInitDesign}));
  Eigen::MatrixXd y(x.rows(), problem.k);
  for (Eigen::Index i = 0; i < x.rows(); ++i) y.row(i) = evaluate(problem, x.row(i).transpose()).transpose();

  ParetoFront front(reference_max(problem));
  for (Eigen::Index i = 0; i < y.rows(); ++i) front.insert(y.row(i).transpose());
  std::vector<GPModel> models = fit_models(x, y, cfg, cfg.seed);
  return BOState{std::move(problem), x, y, std::move(front), std::move(models), 0, cfg.seed};
}

Suggestion suggest(const BOState& state, const RunConfig& cfg) {
  const int t = state.iteration + 1;
  Suggestion out;
  out.horizon = horizon(t, cfg.iterations, cfg.horizon_cap);
  try {
    out.x = optimize_acquisition(state, cfg, t, out.horizon);
  } catch (const std::exception&) {
    out.x = fallback_candidate(state, cfg, t);
    out.fallback = true;
  }
  return out;
}

BOState observe(BOState state, const Eigen::VectorXd& x, const ObjectiveVector& y, const RunConfig& cfg) {
  if (x.size() != state.problem.d) {
    throw std::invalid_argument("observe: x has " + std::to_string(x.size()) + " entries, expected " +
                                std::to_string(state.problem.d));
  }
  if (y.size() != state.problem.k) {
    throw std::invalid_argument("observe: y has " + std::to_string(y.size()) + " entries, expected " +
                                std::to_string(state.problem.k));
  }
  if (!x.allFinite() || !y.allFinite()) throw std::invalid_argument("observe: non-finite observation");

  const Eigen::Index n = state.inputs.rows();
  state.inputs.conservativeResize(n + 1, Eigen::NoChange);
  state.outputs.conservativeResize(n + 1, Eigen::NoChange);
  state.inputs.row(n) = x.transpose();
  state.outputs.row(n) = y.transpose();
  state.front.insert(y);
  state.models = fit_models(state.inputs, state.outputs, cfg, state.rng_seed);
  ++state.iteration;
  return state;
}

std::pair<BOState, TraceRow> step(BOState state, const RunConfig& cfg) {
  const int t = state.iteration + 1;
  try {
    const auto start = std::chrono::steady_clock::now();
    const Suggestion s = suggest(state, cfg);
    const ObjectiveVector y = evaluate(state.problem, s.x);
    TraceRow row;
    row.iteration = t;
    row.horizon = s.horizon;
    row.x_unit = s.x;
    row.y = y;
    row.improvement = hvi(y, state.front);
    row.fallback = s.fallback;
    state = observe(std::move(state), s.x, y, cfg);
    row.hypervolume = state.hypervolume();
    row.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return {std::move(state), std::move(row)};
  } catch (const std::exception& e) {
    throw std::runtime_error("iteration " + std::to_string(t) + ": " + e.what());
  }
}

RunRecord run_bo(const RunConfig& cfg) {
  RunRecord record;
  record.config = cfg;
  BOState state = init_state(cfg);
  record.initial_hypervolume = state.hypervolume();
  record.rows.reserve(static_cast<std::size_t>(cfg.iterations));
  for (int t = 1; t <= cfg.iterations; ++t) {
    auto [next, row] = step(std::move(state), cfg);
    state = std::move(next);
    record.rows.push_back(std::move(row));
  }

  record.pareto_front = state.front.points();
  record.pareto_set.resize(static_cast<Eigen::Index>(record.pareto_front.size()), state.problem.d);
  for (std::size_t i = 0; i < record.pareto_front.size(); ++i) {
    for (Eigen::Index r = 0; r < state.outputs.rows(); ++r) {
      if (state.outputs.row(r).transpose() == record.pareto_front[i]) {
        record.pareto_set.row(static_cast<Eigen::Index>(i)) = state.inputs.row(r);
        break;
      }
    }
  }
  return record;
}

}  // namespace nmmo
