#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace nmmo {

/// Objective values of one evaluation, maximization convention.
using ObjectiveVector = Eigen::VectorXd;

/// a Pareto-dominates b: a_i >= b_i for all i and a_j > b_j for some j.
/// Throws std::invalid_argument on dimension mismatch.
bool dominates(const ObjectiveVector& a, const ObjectiveVector& b);

/// a_i >= b_i for all i (equality allowed everywhere).
bool weakly_dominates(const ObjectiveVector& a, const ObjectiveVector& b);

/// Maximal mutually non-dominated subset. Duplicates collapse to one copy and
/// the result is sorted lexicographically, so the output does not depend on
/// input order.
std::vector<ObjectiveVector> nondominated(std::span<const ObjectiveVector> ys);

/// A set of mutually non-dominated objective vectors and the reference point
/// used to measure it. Points that do not lie above the reference may be
/// stored; they contribute no volume.
class ParetoFront {
 public:
  explicit ParetoFront(ObjectiveVector reference);
  ParetoFront(std::span<const ObjectiveVector> points, ObjectiveVector reference);

  const std::vector<ObjectiveVector>& points() const { return points_; }
  const ObjectiveVector& reference() const { return reference_; }
  Eigen::Index dim() const { return reference_.size(); }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }

  /// True when some stored point weakly dominates y.
  bool covers(const ObjectiveVector& y) const;

  /// Adds y unless it is weakly dominated; evicts points y dominates.
  /// Returns whether y entered the front.
  bool insert(const ObjectiveVector& y);

 private:
  std::vector<ObjectiveVector> points_;
  ObjectiveVector reference_;
};

/// Exact dominated volume of the front relative to its reference point.
double hypervolume(const ParetoFront& front);

/// Exact dominated volume of an arbitrary point set (dominated points and
/// points not above `reference` are allowed and handled).
double hypervolume(std::span<const ObjectiveVector> points, const ObjectiveVector& reference);

/// HV(front ∪ {y}) − HV(front).
double hvi(const ObjectiveVector& y, const ParetoFront& front);

/// Hypervolume of a fixed front plus small batches of extra points. Keeps the
/// front's contributing points in a flat buffer so repeated evaluations (one
/// per Monte-Carlo sample) avoid re-filtering the front.
class HypervolumeAccumulator {
 public:
  explicit HypervolumeAccumulator(const ParetoFront& front);

  double base() const { return base_; }
  int dim() const { return dim_; }

  /// HV(front ∪ extra) where `extra` is a q×K row-major block.
  double with(std::span<const double> extra) const;

  /// HV(front ∪ extra) − HV(front), clamped at zero.
  double improvement(std::span<const double> extra) const;

 private:
  int dim_;
  std::vector<double> reference_;
  std::vector<double> points_;  // n×K row-major, each strictly above reference
  double base_ = 0.0;
};

struct MonteCarloEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

/// Uniform-sampling estimate of the dominated volume inside the bounding box
/// [reference, max over contributing points]. Independent of the exact
/// algorithms; used as a test oracle.
MonteCarloEstimate hv_mc_oracle(const ParetoFront& front, std::size_t n_samples, std::uint64_t seed);

namespace detail {

// Exact algorithms on flat row-major buffers. Every point must lie strictly
// above `ref` in all coordinates. Buffers are reordered in place.
double hv2d(std::span<double> pts, std::span<const double> ref);
double hv3d(std::span<double> pts, std::span<const double> ref);
double hv_slicing(std::span<double> pts, std::span<const double> ref, int dim);
double hv_flat(std::span<double> pts, std::span<const double> ref, int dim);

}  // namespace detail

}  // namespace nmmo
