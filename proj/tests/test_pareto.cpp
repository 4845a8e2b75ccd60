#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "nmmo/pareto.hpp"
#include "oracles.hpp"

namespace nmmo {
namespace {

ObjectiveVector v(std::initializer_list<double> xs) {
  ObjectiveVector out(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) out[i++] = x;
  return out;
}

// Unit cells with integer corners whose upper corner is weakly dominated.
double grid_count_2d(const std::vector<ObjectiveVector>& pts, int extent) {
  int count = 0;
  for (int i = 0; i < extent; ++i) {
    for (int j = 0; j < extent; ++j) {
      const ObjectiveVector corner = v({i + 1.0, j + 1.0});
      if (std::any_of(pts.begin(), pts.end(), [&](const auto& p) { return weakly_dominates(p, corner); })) ++count;
    }
  }
  return count;
}

TEST(Dominance, Examples) {
  EXPECT_TRUE(dominates(v({2, 2}), v({1, 1})));
  EXPECT_FALSE(dominates(v({2, 1}), v({1, 2})));
  EXPECT_FALSE(dominates(v({1, 1}), v({1, 1})));
  EXPECT_TRUE(dominates(v({1, 2}), v({1, 1})));
  EXPECT_TRUE(weakly_dominates(v({1, 1}), v({1, 1})));
}

TEST(Dominance, DimensionMismatchThrows) {
  EXPECT_THROW(dominates(v({1, 2}), v({1, 2, 3})), std::invalid_argument);
}

TEST(Nondominated, Examples) {
  const std::vector<ObjectiveVector> one{v({1, 1})};
  EXPECT_EQ(nondominated(one), one);

  const std::vector<ObjectiveVector> four{v({3, 1}), v({1, 3}), v({2, 2}), v({0.5, 0.5})};
  const auto nd = nondominated(four);
  ASSERT_EQ(nd.size(), 3u);
  for (const auto& p : {v({3, 1}), v({1, 3}), v({2, 2})}) EXPECT_NE(std::find(nd.begin(), nd.end(), p), nd.end());

  const std::vector<ObjectiveVector> dup{v({1, 2}), v({1, 2})};
  EXPECT_EQ(nondominated(dup), std::vector<ObjectiveVector>{v({1, 2})});

  EXPECT_TRUE(nondominated(std::vector<ObjectiveVector>{}).empty());
}

TEST(Nondominated, IdempotentAndOrderIndependent) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    auto pts = oracle::random_points(rng, 2 + trial % 3, 25);
    const auto nd = nondominated(pts);
    EXPECT_EQ(nondominated(nd), nd);
    std::shuffle(pts.begin(), pts.end(), rng);
    EXPECT_EQ(nondominated(pts), nd);
    for (const auto& a : nd)
      for (const auto& b : nd) EXPECT_FALSE(dominates(a, b));
  }
}

TEST(ParetoFront, InsertMaintainsNondominance) {
  ParetoFront f(v({0, 0}));
  EXPECT_TRUE(f.insert(v({1, 1})));
  EXPECT_FALSE(f.insert(v({0.5, 0.5})));
  EXPECT_FALSE(f.insert(v({1, 1})));
  EXPECT_TRUE(f.insert(v({2, 0.5})));
  EXPECT_TRUE(f.insert(v({2, 2})));
  ASSERT_EQ(f.size(), 1u);
  EXPECT_EQ(f.points().front(), v({2, 2}));
  EXPECT_TRUE(f.covers(v({1, 2})));
}

TEST(ParetoFront, RejectsNonFiniteAndBadDimensions) {
  EXPECT_THROW(ParetoFront(v({0})), std::invalid_argument);
  ParetoFront f(v({0, 0}));
  EXPECT_THROW(f.insert(v({1, 2, 3})), std::invalid_argument);
  const std::vector<ObjectiveVector> bad{v({NAN, 1})};
  EXPECT_THROW(hypervolume(bad, v({0, 0})), std::invalid_argument);
}

TEST(Hypervolume, Examples) {
  const std::vector<ObjectiveVector> unit{v({1, 1})};
  EXPECT_DOUBLE_EQ(hypervolume(ParetoFront(unit, v({0, 0}))), 1.0);

  const std::vector<ObjectiveVector> three{v({3, 1}), v({2, 2}), v({1, 3})};
  const double hv = hypervolume(ParetoFront(three, v({0, 0})));
  EXPECT_DOUBLE_EQ(hv, 6.0);
  EXPECT_DOUBLE_EQ(hv, grid_count_2d(three, 4));
  EXPECT_DOUBLE_EQ(hv, oracle::inclusion_exclusion_hv(three, v({0, 0})));

  EXPECT_EQ(hypervolume(ParetoFront(v({0, 0}))), 0.0);
  EXPECT_EQ(hypervolume(ParetoFront(v({0, 0, 0, 0}))), 0.0);
}

TEST(Hypervolume, PointsBelowReferenceContributeNothing) {
  const std::vector<ObjectiveVector> pts{v({-1, 5}), v({2, -0.5}), v({1, 1})};
  EXPECT_DOUBLE_EQ(hypervolume(pts, v({0, 0})), 1.0);
  EXPECT_DOUBLE_EQ(hypervolume(std::vector<ObjectiveVector>{v({0, 3})}, v({0, 0})), 0.0);
}

TEST(Hypervolume, MatchesInclusionExclusionForAllDimensions) {
  std::mt19937_64 rng(11);
  for (int k = 2; k <= 5; ++k) {
    for (int trial = 0; trial < 25; ++trial) {
      const auto pts = oracle::random_points(rng, k, 2 + trial % 9);
      const ObjectiveVector r = ObjectiveVector::Constant(k, 0.1);
      const double exact = hypervolume(pts, r);
      const auto nd = nondominated(pts);
      EXPECT_NEAR(exact, oracle::inclusion_exclusion_hv(nd, r), 1e-12) << "K=" << k;
    }
  }
}

TEST(Hypervolume, SweepsAgreeWithSlicing) {
  std::mt19937_64 rng(3);
  for (int k = 2; k <= 3; ++k) {
    for (int trial = 0; trial < 30; ++trial) {
      const auto pts = nondominated(oracle::random_points(rng, k, 40));
      std::vector<double> flat, flat2;
      for (const auto& p : pts)
        for (Eigen::Index i = 0; i < k; ++i) flat.push_back(p[i]);
      flat2 = flat;
      const std::vector<double> ref(static_cast<std::size_t>(k), 0.0);
      const double sweep = k == 2 ? detail::hv2d(flat, ref) : detail::hv3d(flat, ref);
      EXPECT_NEAR(sweep, detail::hv_slicing(flat2, ref, k), 1e-12);
    }
  }
}

TEST(Hvi, Examples) {
  const std::vector<ObjectiveVector> two{v({3, 1}), v({1, 3})};
  EXPECT_DOUBLE_EQ(hypervolume(ParetoFront(two, v({0, 0}))), 5.0);
  EXPECT_DOUBLE_EQ(hvi(v({2, 2}), ParetoFront(two, v({0, 0}))), 1.0);
  const std::vector<ObjectiveVector> unit{v({1, 1})};
  EXPECT_EQ(hvi(v({0.5, 0.5}), ParetoFront(unit, v({0, 0}))), 0.0);
  EXPECT_DOUBLE_EQ(hvi(v({1, 1}), ParetoFront(v({0, 0}))), 1.0);
  EXPECT_THROW(hvi(v({1, 1, 1}), ParetoFront(v({0, 0}))), std::invalid_argument);
}

TEST(Hvi, ZeroExactlyWhenCoveredOrNotAboveReference) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-0.2, 1.2);
  for (int trial = 0; trial < 200; ++trial) {
    const int k = 2 + trial % 3;
    const ParetoFront f(oracle::random_points(rng, k, 12), ObjectiveVector::Zero(k));
    ObjectiveVector y(k);
    for (int i = 0; i < k; ++i) y[i] = u(rng);
    const bool above = (y.array() > 0.0).all();
    const double gain = hvi(y, f);
    EXPECT_GE(gain, 0.0);
    EXPECT_EQ(gain == 0.0, f.covers(y) || !above) << y.transpose();
  }
}

TEST(Hvi, MonotoneUnderDominance) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int k = 2 + trial % 2;
    const ParetoFront f(oracle::random_points(rng, k, 10), ObjectiveVector::Zero(k));
    ObjectiveVector b(k), a(k);
    for (int i = 0; i < k; ++i) {
      b[i] = u(rng);
      a[i] = b[i] + 0.2 * u(rng);
    }
    EXPECT_GE(hvi(a, f), hvi(b, f));
  }
}

TEST(Accumulator, MatchesDirectHypervolume) {
  std::mt19937_64 rng(13);
  for (int k = 2; k <= 4; ++k) {
    const auto pts = oracle::random_points(rng, k, 15);
    const ParetoFront f(pts, ObjectiveVector::Zero(k));
    const HypervolumeAccumulator acc(f);
    EXPECT_DOUBLE_EQ(acc.base(), hypervolume(f));
    const auto extra = oracle::random_points(rng, k, 3);
    std::vector<double> flat;
    std::vector<ObjectiveVector> all = f.points();
    for (const auto& e : extra) {
      all.push_back(e);
      for (int i = 0; i < k; ++i) flat.push_back(e[i]);
    }
    EXPECT_NEAR(acc.with(flat), hypervolume(all, f.reference()), 1e-12);
  }
}

TEST(McOracle, Examples) {
  const std::vector<ObjectiveVector> unit{v({1, 1})};
  const auto e1 = hv_mc_oracle(ParetoFront(unit, v({0, 0})), 1'000'000, 1);
  EXPECT_NEAR(e1.value, 1.0, std::max(3 * e1.std_error, 1e-12));

  const std::vector<ObjectiveVector> three{v({3, 1}), v({2, 2}), v({1, 3})};
  const ParetoFront f(three, v({0, 0}));
  const auto e = hv_mc_oracle(f, 1'000'000, 2);
  EXPECT_NEAR(e.value, 6.0, 3 * e.std_error);
  const auto again = hv_mc_oracle(f, 1'000'000, 2);
  EXPECT_EQ(e.value, again.value);
  EXPECT_EQ(e.std_error, again.std_error);
  EXPECT_THROW(hv_mc_oracle(f, 0, 1), std::invalid_argument);
}

TEST(Additivity, TelescopingSmallSequences) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const int k = 2 + trial % 3;
    const auto seq = oracle::random_points(rng, k, 20);
    ParetoFront f(ObjectiveVector::Constant(k, 0.05));
    double total = 0.0;
    for (const auto& y : seq) {
      total += hvi(y, f);
      f.insert(y);
    }
    EXPECT_NEAR(total, hypervolume(f), 1e-9);
  }
}

}  // namespace
}  // namespace nmmo
