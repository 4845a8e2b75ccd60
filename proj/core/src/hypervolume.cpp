#include <algorithm>
#include <array>
#include <cmath>
#include <iterator>
#include <map>
#include <random>
#include <stdexcept>
#include <string>

#include "nmmo/pareto.hpp"

namespace nmmo {
namespace detail {
namespace {

// Adds the point (a, b) to a minimization staircase {q1 -> q2} whose boxes
// extend to (r1, r2). Returns the area newly covered.
double staircase_insert(std::map<double, double>& stair, double a, double b, double r1, double r2) {
  auto it = stair.lower_bound(a);
  if (it != stair.end() && it->first == a && it->second <= b) return 0.0;
  double height = r2;
  if (it != stair.begin()) {
    const auto pred = std::prev(it);
    if (pred->second <= b) return 0.0;
    height = pred->second;
  }
  double x = a;
  double added = 0.0;
  while (it != stair.end() && it->second >= b) {
    added += (it->first - x) * (height - b);
    x = it->first;
    height = it->second;
    it = stair.erase(it);
  }
  const double stop = it != stair.end() ? it->first : r1;
  added += (stop - x) * (height - b);
  stair.emplace_hint(it, a, b);
  return added;
}

template <class Inner>
double slice_last(std::span<double> pts, std::span<const double> ref, int dim, Inner&& inner) {
  const std::size_t n = pts.size() / static_cast<std::size_t>(dim);
  if (n == 0) return 0.0;
  const int last = dim - 1;
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return pts[i * dim + last] > pts[j * dim + last];
  });

  std::vector<double> projected;
  projected.reserve(n * static_cast<std::size_t>(last));
  std::vector<double> scratch;
  double volume = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double* row = pts.data() + order[k] * dim;
    projected.insert(projected.end(), row, row + last);
    const double z = row[last];
    const double z_next = k + 1 < n ? pts[order[k + 1] * dim + last] : ref[last];
    if (z == z_next) continue;
    scratch = projected;
    volume += inner(std::span<double>(scratch), ref.first(last), last) * (z - z_next);
  }
  return volume;
}

double hv1d(std::span<const double> pts, std::span<const double> ref) {
  double best = ref[0];
  for (double v : pts) best = std::max(best, v);
  return best - ref[0];
}

}  // namespace

double hv2d(std::span<double> pts, std::span<const double> ref) {
  const std::size_t n = pts.size() / 2;
  std::vector<std::array<double, 2>> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = {pts[2 * i], pts[2 * i + 1]};
  std::sort(p.begin(), p.end(), [](const auto& a, const auto& b) {
    return a[0] > b[0] || (a[0] == b[0] && a[1] > b[1]);
  });
  double volume = 0.0;
  double height = ref[1];
  for (const auto& q : p) {
    if (q[1] > height) {
      volume += (q[0] - ref[0]) * (q[1] - height);
      height = q[1];
    }
  }
  return volume;
}

double hv3d(std::span<double> pts, std::span<const double> ref) {
  const std::size_t n = pts.size() / 3;
  std::vector<std::array<double, 3>> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = {pts[3 * i], pts[3 * i + 1], pts[3 * i + 2]};
  std::sort(p.begin(), p.end(), [](const auto& a, const auto& b) { return a[2] > b[2]; });

  // Sweep down the third axis keeping the 2-D cross-section as a staircase in
  // negated (minimization) coordinates.
  std::map<double, double> stair;
  double area = 0.0;
  double volume = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    area += staircase_insert(stair, -p[i][0], -p[i][1], -ref[0], -ref[1]);
    const double z_next = i + 1 < n ? p[i + 1][2] : ref[2];
    volume += area * (p[i][2] - z_next);
  }
  return volume;
}

double hv_slicing(std::span<double> pts, std::span<const double> ref, int dim) {
  if (dim == 1) return hv1d(pts, ref);
  return slice_last(pts, ref, dim, [](std::span<double> sub, std::span<const double> sub_ref, int d) {
    return hv_slicing(sub, sub_ref, d);
  });
}

double hv_flat(std::span<double> pts, std::span<const double> ref, int dim) {
  if (pts.empty()) return 0.0;
  switch (dim) {
    case 1:
      return hv1d(pts, ref);
    case 2:
      return hv2d(pts, ref);
    case 3:
      return hv3d(pts, ref);
    default:
      return slice_last(pts, ref, dim, [](std::span<double> sub, std::span<const double> sub_ref, int d) {
        return hv_flat(sub, sub_ref, d);
      });
  }
}

}  // namespace detail

namespace {

bool strictly_above(const double* p, std::span<const double> ref) {
  for (std::size_t i = 0; i < ref.size(); ++i) {
    if (!(p[i] > ref[i])) return false;
  }
  return true;
}

std::vector<double> flatten_contributing(std::span<const ObjectiveVector> points, const ObjectiveVector& reference) {
  const std::span<const double> ref(reference.data(), static_cast<std::size_t>(reference.size()));
  std::vector<double> flat;
  flat.reserve(points.size() * ref.size());
  for (const auto& p : points) {
    if (p.size() != reference.size()) {
      throw std::invalid_argument("hypervolume: point dimension " + std::to_string(p.size()) +
                                  " does not match reference dimension " + std::to_string(reference.size()));
    }
    if (!p.allFinite()) throw std::invalid_argument("hypervolume: non-finite coordinate");
    if (strictly_above(p.data(), ref)) flat.insert(flat.end(), p.data(), p.data() + p.size());
  }
  return flat;
}

}  // namespace

double hypervolume(std::span<const ObjectiveVector> points, const ObjectiveVector& reference) {
  if (!reference.allFinite()) throw std::invalid_argument("hypervolume: non-finite reference");
  std::vector<double> flat = flatten_contributing(points, reference);
  const std::span<const double> ref(reference.data(), static_cast<std::size_t>(reference.size()));
  return detail::hv_flat(flat, ref, static_cast<int>(reference.size()));
}

double hypervolume(const ParetoFront& front) {
  return hypervolume(std::span<const ObjectiveVector>(front.points()), front.reference());
}

double hvi(const ObjectiveVector& y, const ParetoFront& front) {
  if (y.size() != front.dim()) {
    throw std::invalid_argument("hvi: point dimension " + std::to_string(y.size()) +
                                " does not match front dimension " + std::to_string(front.dim()));
  }
  if (!y.allFinite()) throw std::invalid_argument("hvi: non-finite coordinate");
  const auto& r = front.reference();
  if (!strictly_above(y.data(), std::span<const double>(r.data(), static_cast<std::size_t>(r.size())))) return 0.0;
  if (front.covers(y)) return 0.0;
  const HypervolumeAccumulator acc(front);
  return acc.improvement(std::span<const double>(y.data(), static_cast<std::size_t>(y.size())));
}

HypervolumeAccumulator::HypervolumeAccumulator(const ParetoFront& front)
    : dim_(static_cast<int>(front.dim())),
      reference_(front.reference().data(), front.reference().data() + front.dim()) {
  points_ = flatten_contributing(std::span<const ObjectiveVector>(front.points()), front.reference());
  std::vector<double> scratch = points_;
  base_ = detail::hv_flat(scratch, reference_, dim_);
}

double HypervolumeAccumulator::with(std::span<const double> extra) const {
  std::vector<double> scratch;
  scratch.reserve(points_.size() + extra.size());
  scratch = points_;
  const std::size_t k = static_cast<std::size_t>(dim_);
  for (std::size_t i = 0; i + k <= extra.size(); i += k) {
    if (strictly_above(extra.data() + i, reference_)) scratch.insert(scratch.end(), extra.data() + i, extra.data() + i + k);
  }
  if (scratch.size() == points_.size()) return base_;
  return detail::hv_flat(scratch, reference_, dim_);
}

double HypervolumeAccumulator::improvement(std::span<const double> extra) const {
  return std::max(0.0, with(extra) - base_);
}

MonteCarloEstimate hv_mc_oracle(const ParetoFront& front, std::size_t n_samples, std::uint64_t seed) {
  if (n_samples == 0) throw std::invalid_argument("hv_mc_oracle: n_samples must be positive");
  const auto& ref = front.reference();
  const Eigen::Index k = ref.size();
  std::vector<ObjectiveVector> contributing;
  for (const auto& p : front.points()) {
    if ((p.array() > ref.array()).all()) contributing.push_back(p);
  }
  if (contributing.empty()) return {};

  ObjectiveVector upper = ref;
  for (const auto& p : contributing) upper = upper.cwiseMax(p);
  const ObjectiveVector width = upper - ref;
  const double box = width.prod();

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  ObjectiveVector z(k);
  std::size_t hits = 0;
  for (std::size_t s = 0; s < n_samples; ++s) {
    for (Eigen::Index i = 0; i < k; ++i) z[i] = ref[i] + width[i] * unit(rng);
    for (const auto& p : contributing) {
      if ((p.array() >= z.array()).all()) {
        ++hits;
        break;
      }
    }
  }
  const double n = static_cast<double>(n_samples);
  const double frac = static_cast<double>(hits) / n;
  return {box * frac, box * std::sqrt(frac * (1.0 - frac) / n)};
}

}  // namespace nmmo
