#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "nmmo/pareto.hpp"

namespace nmmo {

/// Multi-objective test problem. Native objectives are minimized; the
/// toolkit sees their negation.
struct Problem {
  using NativeObjective = Eigen::VectorXd (*)(const Eigen::VectorXd& x_native);

  std::string name;
  int d = 0;
  int k = 0;
  std::vector<std::pair<double, double>> bounds;
  /// Reference point in native (minimization) units.
  Eigen::VectorXd reference_native;
  /// Dimensions rounded to the nearest integer.
  std::vector<int> integer_dims;
  /// Dimensions snapped to the nearest value of a finite level set.
  std::vector<std::pair<int, std::vector<double>>> discrete_dims;
  NativeObjective objective = nullptr;
};

/// zdt3, four_bar_truss, reinforced_concrete_beam, gear_train, welded_beam,
/// disc_brake. Unknown names throw std::invalid_argument listing these.
Problem make_problem(std::string_view name);

std::vector<std::string> problem_names();

/// Maps [0,1]^d to native bounds and applies integer/discrete rounding.
Eigen::VectorXd to_native(const Problem& p, const Eigen::VectorXd& x_unit);

/// Native minimization objectives at a native input (no rounding applied).
Eigen::VectorXd evaluate_native(const Problem& p, const Eigen::VectorXd& x_native);

/// −g(to_native(x_unit)). A non-finite result is retried once with the input
/// pulled 1e-9 inside the bounds; if still non-finite, throws
/// std::domain_error.
ObjectiveVector evaluate(const Problem& p, const Eigen::VectorXd& x_unit);

/// −reference_native.
ObjectiveVector reference_max(const Problem& p);

}  // namespace nmmo
