#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "nmmo/acquisition.hpp"
#include "nmmo/pareto.hpp"
#include "nmmo/problems.hpp"
#include "nmmo/sobol.hpp"
#include "nmmo/surrogate.hpp"

namespace {

using namespace nmmo;

std::vector<ObjectiveVector> simplex_front(int k, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> e(1.0);
  std::vector<ObjectiveVector> pts;
  for (int i = 0; i < n; ++i) {
    ObjectiveVector w(k);
    for (int j = 0; j < k; ++j) w[j] = e(rng);
    pts.push_back((w / w.norm()).eval());
  }
  return pts;
}

void BM_Hypervolume(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const int n = static_cast<int>(state.range(1));
  const auto pts = simplex_front(k, n, 1);
  const ObjectiveVector ref = ObjectiveVector::Zero(k);
  for (auto _ : state) benchmark::DoNotOptimize(hypervolume(pts, ref));
}
BENCHMARK(BM_Hypervolume)->Args({2, 50})->Args({2, 500})->Args({3, 50})->Args({3, 200})->Args({4, 30});

struct Fixture {
  std::vector<GPModel> models;
  ParetoFront front{ObjectiveVector::Constant(2, -11.0)};
  Eigen::MatrixXd grid;
};

Fixture zdt3_fixture(int n) {
  const Problem p = make_problem("zdt3");
  const Eigen::MatrixXd x = sobol_candidates(p.d, static_cast<std::size_t>(n), 3);
  Eigen::MatrixXd y(n, p.k);
  Fixture f;
  f.front = ParetoFront(reference_max(p));
  for (int i = 0; i < n; ++i) {
    y.row(i) = evaluate(p, x.row(i).transpose()).transpose();
    f.front.insert(y.row(i).transpose());
  }
  for (int k = 0; k < p.k; ++k) f.models.push_back(fit_gp(x, y.col(k), 2, static_cast<std::uint64_t>(k)));
  f.grid = sobol_candidates(p.d, 8, 9);
  return f;
}

void BM_FitGp(benchmark::State& state) {
  const Problem p = make_problem("zdt3");
  const int n = static_cast<int>(state.range(0));
  const Eigen::MatrixXd x = sobol_candidates(p.d, static_cast<std::size_t>(n), 3);
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) y[i] = evaluate(p, x.row(i).transpose())[1];
  for (auto _ : state) benchmark::DoNotOptimize(fit_gp(x, y, 8, 0));
}
BENCHMARK(BM_FitGp)->Arg(10)->Arg(40)->Arg(70)->Unit(benchmark::kMillisecond);

void BM_Ehvi(benchmark::State& state) {
  const Fixture f = zdt3_fixture(static_cast<int>(state.range(0)));
  const HypervolumeAcquisition acq(f.models, f.front, MCConfig{}, 4);
  const Eigen::VectorXd x = f.grid.row(0).transpose();
  for (auto _ : state) benchmark::DoNotOptimize(acq.ehvi(x));
}
BENCHMARK(BM_Ehvi)->Arg(10)->Arg(70)->Unit(benchmark::kMicrosecond);

void BM_Behvi(benchmark::State& state) {
  const Fixture f = zdt3_fixture(40);
  const HypervolumeAcquisition acq(f.models, f.front, MCConfig{}, 4);
  const Eigen::MatrixXd xb = f.grid.topRows(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(acq.behvi(xb));
}
BENCHMARK(BM_Behvi)->DenseRange(1, 4)->Unit(benchmark::kMicrosecond);

void BM_Joint(benchmark::State& state) {
  const Fixture f = zdt3_fixture(40);
  const HypervolumeAcquisition acq(f.models, f.front, MCConfig{}, 4);
  const Eigen::VectorXd x = f.grid.row(0).transpose();
  const Eigen::MatrixXd xp = f.grid.middleRows(1, state.range(0) - 1);
  for (auto _ : state) benchmark::DoNotOptimize(acq.joint(x, xp));
}
BENCHMARK(BM_Joint)->DenseRange(2, 4)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
