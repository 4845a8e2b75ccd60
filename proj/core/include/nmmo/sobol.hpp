#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>

#include <Eigen/Core>

namespace nmmo {

/// Mixes a base seed with integer tags (iteration, purpose, objective, ...)
/// into an independent 64-bit stream seed.
std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> tags);

/// n×d Sobol points in [0,1)^d, scrambled by a seeded random digital shift.
/// Throws std::invalid_argument for d = 0, n = 0 or d above the direction
/// number table.
Eigen::MatrixXd sobol_candidates(int d, std::size_t n, std::uint64_t seed);

/// n×d quasi-random standard normal draws: scrambled Sobol points pushed
/// through the inverse normal CDF. Column j of a wider draw equals column j
/// of a narrower draw with the same seed.
Eigen::MatrixXd sobol_normal(int d, std::size_t n, std::uint64_t seed);

}  // namespace nmmo
