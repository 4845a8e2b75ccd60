#include "nmmo/sobol.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/special_functions/erf.hpp>
#include <boost/random/sobol.hpp>

namespace nmmo {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Fills `out` (n×d) with uniform points strictly inside (0, 1).
void scrambled_sobol(Eigen::MatrixXd& out, int d, std::size_t n, std::uint64_t seed) {
  if (d <= 0) throw std::invalid_argument("sobol: dimension must be positive");
  if (n == 0) throw std::invalid_argument("sobol: point count must be positive");
  constexpr unsigned max_dim = boost::random::default_sobol_table::max_dimension;
  if (static_cast<unsigned>(d) > max_dim) {
    throw std::invalid_argument("sobol: dimension " + std::to_string(d) + " exceeds " + std::to_string(max_dim));
  }

  std::mt19937_64 rng(seed);
  std::vector<std::uint64_t> shift(static_cast<std::size_t>(d));
  for (auto& s : shift) s = rng();

  boost::random::sobol engine(static_cast<std::size_t>(d));
  out.resize(static_cast<Eigen::Index>(n), d);
  constexpr double scale = 0x1.0p-53;
  // The engine starts after the origin; row 0 restores it so that every
  // power-of-two prefix is a complete digital net.
  for (std::size_t i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) {
      const std::uint64_t raw = i == 0 ? 0 : static_cast<std::uint64_t>(engine());
      const std::uint64_t bits = raw ^ shift[static_cast<std::size_t>(j)];
      out(static_cast<Eigen::Index>(i), j) = (static_cast<double>(bits >> 11) + 0.5) * scale;
    }
  }
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> tags) {
  std::uint64_t h = splitmix64(seed);
  for (std::uint64_t t : tags) h = splitmix64(h ^ splitmix64(t + 0x632be59bd9b4e019ULL));
  return h;
}

Eigen::MatrixXd sobol_candidates(int d, std::size_t n, std::uint64_t seed) {
  Eigen::MatrixXd out;
  scrambled_sobol(out, d, n, seed);
  return out;
}

Eigen::MatrixXd sobol_normal(int d, std::size_t n, std::uint64_t seed) {
  Eigen::MatrixXd out;
  scrambled_sobol(out, d, n, seed);
  // Phi^{-1}(u) = -sqrt(2) * erfc^{-1}(2u)
  out = out.unaryExpr([](double u) { return -std::sqrt(2.0) * boost::math::erfc_inv(2.0 * u); });
  return out;
}

}  // namespace nmmo
