#include "nmmo/pareto.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace nmmo {
namespace {

void require_same_dim(const ObjectiveVector& a, const ObjectiveVector& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("objective dimension mismatch: " + std::to_string(a.size()) +
                                " vs " + std::to_string(b.size()));
  }
}

bool lexicographic_less(const ObjectiveVector& a, const ObjectiveVector& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
  require_same_dim(a, b);
  bool strict = false;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return false;
    if (a[i] > b[i]) strict = true;
  }
  return strict;
}

bool weakly_dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
  require_same_dim(a, b);
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return false;
  }
  return true;
}

std::vector<ObjectiveVector> nondominated(std::span<const ObjectiveVector> ys) {
  std::vector<ObjectiveVector> sorted(ys.begin(), ys.end());
  for (const auto& y : sorted) require_same_dim(y, sorted.front());
  // Descending lexicographic order: a point can only be dominated by one that
  // precedes it, and duplicates become adjacent.
  std::sort(sorted.begin(), sorted.end(),
            [](const ObjectiveVector& a, const ObjectiveVector& b) { return lexicographic_less(b, a); });

  std::vector<ObjectiveVector> keep;
  for (const auto& y : sorted) {
    const bool covered = std::any_of(keep.begin(), keep.end(),
                                     [&](const ObjectiveVector& k) { return weakly_dominates(k, y); });
    if (!covered) keep.push_back(y);
  }
  std::sort(keep.begin(), keep.end(), lexicographic_less);
  return keep;
}

ParetoFront::ParetoFront(ObjectiveVector reference) : reference_(std::move(reference)) {
  if (reference_.size() < 2) throw std::invalid_argument("ParetoFront needs at least 2 objectives");
  if (!reference_.allFinite()) throw std::invalid_argument("reference point must be finite");
}

ParetoFront::ParetoFront(std::span<const ObjectiveVector> points, ObjectiveVector reference)
    : ParetoFront(std::move(reference)) {
  for (const auto& p : points) {
    require_same_dim(p, reference_);
    if (!p.allFinite()) throw std::invalid_argument("front points must be finite");
  }
  points_ = nondominated(points);
}

bool ParetoFront::covers(const ObjectiveVector& y) const {
  return std::any_of(points_.begin(), points_.end(),
                     [&](const ObjectiveVector& p) { return weakly_dominates(p, y); });
}

bool ParetoFront::insert(const ObjectiveVector& y) {
  require_same_dim(y, reference_);
  if (!y.allFinite()) throw std::invalid_argument("front points must be finite");
  if (covers(y)) return false;
  std::erase_if(points_, [&](const ObjectiveVector& p) { return dominates(y, p); });
  const auto pos = std::lower_bound(points_.begin(), points_.end(), y, lexicographic_less);
  points_.insert(pos, y);
  return true;
}

}  // namespace nmmo
