#include "nmmo/acquisition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "nmmo/sobol.hpp"

namespace nmmo {
namespace {

std::shared_ptr<const BaseSamples> resolve_base(const MCConfig& mc, std::size_t points, std::size_t objectives) {
  points = std::max<std::size_t>(points, 1);
  if (mc.base_samples) {
    if (mc.base_samples->objectives() != objectives || mc.base_samples->max_points() < points) {
      throw std::invalid_argument("MCConfig: base samples cover " + std::to_string(mc.base_samples->max_points()) +
                                  " points, need " + std::to_string(points));
    }
    return mc.base_samples;
  }
  if (mc.n_samples == 0) throw std::invalid_argument("MCConfig: n_samples must be positive");
  return std::make_shared<const BaseSamples>(mc.n_samples, points, objectives, mc.seed);
}

Eigen::MatrixXd append_row(const Eigen::MatrixXd& m, const Eigen::RowVectorXd& row) {
  Eigen::MatrixXd out(m.rows() + 1, row.size());
  out.topRows(m.rows()) = m;
  out.row(m.rows()) = row;
  return out;
}

constexpr std::size_t kExhaustiveSubsets = 4096;

// Number of non-empty subsets of at most `count` out of m items, saturating
// just above kExhaustiveSubsets.
std::size_t subset_count(std::size_t m, std::size_t count) {
  std::size_t total = 0;
  std::size_t binom = 1;
  for (std::size_t s = 1; s <= std::min(count, m); ++s) {
    binom = binom * (m - s + 1) / s;
    total += binom;
    if (binom > kExhaustiveSubsets || total > kExhaustiveSubsets) return kExhaustiveSubsets + 1;
  }
  return total;
}

// E[(Y − a)^+] for Y ~ N(mean, sd²).
double expected_excess(double mean, double sd, double a) {
  if (std::isinf(a)) return a > 0 ? 0.0 : std::numeric_limits<double>::infinity();
  if (!(sd > 0.0)) return std::max(mean - a, 0.0);
  const double u = (mean - a) / sd;
  const double cdf = 0.5 * std::erfc(-u / std::numbers::sqrt2);
  const double pdf = std::exp(-0.5 * u * u) / std::sqrt(2.0 * std::numbers::pi);
  return (mean - a) * cdf + sd * pdf;
}

}  // namespace

Eigen::MatrixXd canonical_set(const Eigen::MatrixXd& xb) {
  std::vector<Eigen::Index> order(static_cast<std::size_t>(xb.rows()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  auto less = [&](Eigen::Index a, Eigen::Index b) {
    const auto ra = xb.row(a);
    const auto rb = xb.row(b);
    return std::lexicographical_compare(ra.begin(), ra.end(), rb.begin(), rb.end());
  };
  std::sort(order.begin(), order.end(), less);
  order.erase(std::unique(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return xb.row(a) == xb.row(b); }),
              order.end());
  Eigen::MatrixXd out(static_cast<Eigen::Index>(order.size()), xb.cols());
  for (std::size_t i = 0; i < order.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = xb.row(order[i]);
  return out;
}

HypervolumeAcquisition::HypervolumeAcquisition(std::span<const GPModel> models, const ParetoFront& front,
                                               const MCConfig& mc, std::size_t max_points)
    : models_(models), front_(front), volume_(front), base_(resolve_base(mc, max_points, models.size())) {
  if (models.size() != static_cast<std::size_t>(front.dim())) {
    throw std::invalid_argument("acquisition: " + std::to_string(models.size()) + " models for a " +
                                std::to_string(front.dim()) + "-objective front");
  }
}

double HypervolumeAcquisition::behvi(std::span<const GPModel> models, const Eigen::MatrixXd& xb) const {
  if (xb.rows() == 0) return 0.0;
  const SampleTensor draws = joint_sample(models, xb, *base_);
  double total = 0.0;
  for (std::size_t s = 0; s < draws.samples(); ++s) total += volume_.improvement(draws.sample(s));
  return total / static_cast<double>(draws.samples());
}

double HypervolumeAcquisition::behvi(const Eigen::MatrixXd& xb) const { return behvi(models_, xb); }

double HypervolumeAcquisition::ehvi(const Eigen::VectorXd& x) const { return behvi(models_, x.transpose()); }

std::vector<GPModel> HypervolumeAcquisition::fantasy(const Eigen::VectorXd& x) const {
  std::vector<GPModel> out;
  out.reserve(models_.size());
  for (const auto& m : models_) out.push_back(m.fantasize(x));
  return out;
}

double HypervolumeAcquisition::set_value(std::span<const GPModel> models, const Eigen::MatrixXd& xb) const {
  return behvi(models, canonical_set(xb));
}

double HypervolumeAcquisition::lookahead(std::span<const GPModel> models, const Eigen::MatrixXd& grid, int count,
                                         std::size_t inner_restarts, Eigen::MatrixXd* chosen) const {
  if (grid.rows() == 0) throw std::invalid_argument("nested: lookahead grid is empty");
  const Eigen::Index d = grid.cols();
  if (count <= 0) {
    if (chosen) *chosen = Eigen::MatrixXd(0, d);
    return 0.0;
  }
  if (subset_count(static_cast<std::size_t>(grid.rows()), static_cast<std::size_t>(count)) <= kExhaustiveSubsets) {
    return exhaustive(models, grid, count, chosen);
  }

  // First pick: score every grid row alone.
  std::vector<double> first(static_cast<std::size_t>(grid.rows()));
  for (Eigen::Index g = 0; g < grid.rows(); ++g) first[static_cast<std::size_t>(g)] = behvi(models, grid.row(g));
  std::vector<Eigen::Index> order(first.size());
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return first[static_cast<std::size_t>(a)] > first[static_cast<std::size_t>(b)];
  });

  const std::size_t passes = std::clamp<std::size_t>(inner_restarts, 1, order.size());
  double best_value = -std::numeric_limits<double>::infinity();
  Eigen::MatrixXd best_batch;
  for (std::size_t p = 0; p < passes; ++p) {
    Eigen::MatrixXd batch = grid.row(order[p]);
    double value = first[static_cast<std::size_t>(order[p])];
    if (value > best_value) {
      best_value = value;
      best_batch = batch;
    }
    for (int h = 1; h < count; ++h) {
      double step_best = -std::numeric_limits<double>::infinity();
      Eigen::Index step_arg = 0;
      for (Eigen::Index g = 0; g < grid.rows(); ++g) {
        const double v = set_value(models, append_row(batch, grid.row(g)));
        if (v > step_best) {
          step_best = v;
          step_arg = g;
        }
      }
      batch = append_row(batch, grid.row(step_arg));
      if (step_best > best_value) {
        best_value = step_best;
        best_batch = batch;
      }
    }
  }
  if (chosen) *chosen = canonical_set(best_batch);
  return best_value;
}

double HypervolumeAcquisition::exhaustive(std::span<const GPModel> models, const Eigen::MatrixXd& grid, int count,
                                          Eigen::MatrixXd* chosen) const {
  const Eigen::Index m = grid.rows();
  double best_value = -std::numeric_limits<double>::infinity();
  Eigen::MatrixXd best_batch;
  std::vector<Eigen::Index> idx;
  // Subsets in order of size, then lexicographic index order.
  for (int size = 1; size <= std::min<Eigen::Index>(count, m); ++size) {
    idx.resize(static_cast<std::size_t>(size));
    std::iota(idx.begin(), idx.end(), Eigen::Index{0});
    while (true) {
      Eigen::MatrixXd batch(size, grid.cols());
      for (int i = 0; i < size; ++i) batch.row(i) = grid.row(idx[static_cast<std::size_t>(i)]);
      const double v = set_value(models, batch);
      if (v > best_value) {
        best_value = v;
        best_batch = std::move(batch);
      }
      int i = size - 1;
      while (i >= 0 && idx[static_cast<std::size_t>(i)] == m - size + i) --i;
      if (i < 0) break;
      ++idx[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < size; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j) - 1] + 1;
    }
  }
  if (chosen) *chosen = canonical_set(best_batch);
  return best_value;
}

double HypervolumeAcquisition::nested(const Eigen::VectorXd& x, const Eigen::MatrixXd& grid, int horizon,
                                      std::size_t inner_restarts) const {
  if (horizon < 1) throw std::invalid_argument("nested: horizon must be at least 1");
  if (grid.rows() == 0) throw std::invalid_argument("nested: lookahead grid is empty");
  const double immediate = ehvi(x);
  if (horizon == 1) return immediate;
  const std::vector<GPModel> models = fantasy(x);
  return immediate + lookahead(models, grid, horizon - 1, inner_restarts, nullptr);
}

Eigen::MatrixXd HypervolumeAcquisition::nested_batch(const Eigen::VectorXd& x, const Eigen::MatrixXd& grid,
                                                     int horizon, std::size_t inner_restarts) const {
  if (horizon < 1) throw std::invalid_argument("nested: horizon must be at least 1");
  Eigen::MatrixXd chosen(0, grid.cols());
  if (horizon == 1) return chosen;
  const std::vector<GPModel> models = fantasy(x);
  lookahead(models, grid, horizon - 1, inner_restarts, &chosen);
  return chosen;
}

double HypervolumeAcquisition::joint(const Eigen::VectorXd& x, const Eigen::MatrixXd& xp) const {
  const double immediate = ehvi(x);
  if (xp.rows() == 0) return immediate;
  const std::vector<GPModel> models = fantasy(x);
  return immediate + set_value(models, xp);
}

double HypervolumeAcquisition::binom(const Eigen::MatrixXd& xb) const {
  if (xb.rows() == 0) throw std::invalid_argument("binom: batch is empty");
  return set_value(models_, xb);
}

Eigen::VectorXd HypervolumeAcquisition::binom_pick(const Eigen::MatrixXd& xb) const {
  if (xb.rows() == 0) throw std::invalid_argument("binom_pick: batch is empty");
  Eigen::Index best = 0;
  double best_value = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < xb.rows(); ++i) {
    const double v = ehvi(xb.row(i).transpose());
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  return xb.row(best).transpose();
}

double ehvi(std::span<const GPModel> models, const Eigen::VectorXd& x, const ParetoFront& front, const MCConfig& mc) {
  return HypervolumeAcquisition(models, front, mc, 1).ehvi(x);
}

double ehvi_exact_2d(const Eigen::Vector2d& mean, const Eigen::Vector2d& sd, const ParetoFront& front) {
  if (front.dim() != 2) throw std::invalid_argument("ehvi_exact_2d: front must have two objectives");
  const auto& r = front.reference();
  std::vector<Eigen::Vector2d> pts;
  for (const auto& p : front.points()) {
    if (p[0] > r[0] && p[1] > r[1]) pts.emplace_back(p[0], p[1]);
  }
  // Ascending first objective; mutual non-dominance makes the second descending.
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a[0] < b[0]; });

  auto tail0 = [&](double a) { return expected_excess(mean[0], sd[0], a); };
  auto tail1 = [&](double a) { return expected_excess(mean[1], sd[1], a); };
  double total = 0.0;
  double left = r[0];
  for (const auto& q : pts) {
    total += (tail0(left) - tail0(q[0])) * tail1(q[1]);
    left = q[0];
  }
  total += tail0(left) * tail1(r[1]);
  return std::max(total, 0.0);
}

double ehvi_exact_2d(std::span<const GPModel> models, const Eigen::VectorXd& x, const ParetoFront& front) {
  if (models.size() != 2 || front.dim() != 2) throw std::invalid_argument("ehvi_exact_2d: requires K = 2");
  Eigen::Vector2d mean, sd;
  for (int k = 0; k < 2; ++k) {
    const PosteriorGaussian post = models[static_cast<std::size_t>(k)].posterior(x.transpose());
    mean[k] = post.mean[0];
    sd[k] = std::sqrt(std::max(post.covariance(0, 0), 0.0));
  }
  return ehvi_exact_2d(mean, sd, front);
}

double behvi(std::span<const GPModel> models, const Eigen::MatrixXd& xb, const ParetoFront& front,
             const MCConfig& mc) {
  return HypervolumeAcquisition(models, front, mc, static_cast<std::size_t>(xb.rows())).behvi(xb);
}

double nested_af(std::span<const GPModel> models, const Eigen::VectorXd& x, const ParetoFront& front,
                 const LookaheadConfig& cfg, const MCConfig& mc, const Eigen::MatrixXd& grid) {
  const int h = cfg.horizon_cap;
  const HypervolumeAcquisition acq(models, front, mc, static_cast<std::size_t>(std::max(h - 1, 1)));
  return acq.nested(x, grid, h, cfg.inner_restarts);
}

double nested_af(std::span<const GPModel> models, const Eigen::VectorXd& x, const ParetoFront& front,
                 const LookaheadConfig& cfg, const MCConfig& mc) {
  if (cfg.grid_size == 0) throw std::invalid_argument("nested_af: grid_size must be positive");
  const Eigen::MatrixXd grid = sobol_candidates(static_cast<int>(x.size()), cfg.grid_size, cfg.grid_seed);
  return nested_af(models, x, front, cfg, mc, grid);
}

double joint_af(std::span<const GPModel> models, const Eigen::VectorXd& x, const Eigen::MatrixXd& xp,
                const ParetoFront& front, const MCConfig& mc) {
  const HypervolumeAcquisition acq(models, front, mc, static_cast<std::size_t>(std::max<Eigen::Index>(xp.rows(), 1)));
  return acq.joint(x, xp);
}

double binom_af(std::span<const GPModel> models, const Eigen::MatrixXd& xb, const ParetoFront& front,
                const MCConfig& mc) {
  return HypervolumeAcquisition(models, front, mc, static_cast<std::size_t>(xb.rows())).binom(xb);
}

Eigen::VectorXd binom_pick(std::span<const GPModel> models, const Eigen::MatrixXd& xb, const ParetoFront& front,
                           const MCConfig& mc) {
  return HypervolumeAcquisition(models, front, mc, 1).binom_pick(xb);
}

}  // namespace nmmo
