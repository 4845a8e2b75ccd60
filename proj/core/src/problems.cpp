#include "nmmo/problems.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nmmo {
namespace {

using Eigen::VectorXd;

// Constraint violation as used by the unconstrained engineering variants:
// g ≥ 0 is feasible, a negative g contributes −g.
double violation(double g) { return g < 0.0 ? -g : 0.0; }

VectorXd zdt3(const VectorXd& x) {
  const Eigen::Index n = x.size();
  const double f1 = x[0];
  const double g = 1.0 + 9.0 * x.tail(n - 1).sum() / static_cast<double>(n - 1);
  const double ratio = f1 / g;
  const double h = 1.0 - std::sqrt(ratio) - ratio * std::sin(10.0 * std::numbers::pi * f1);
  return VectorXd{{f1, g * h}};
}

VectorXd four_bar_truss(const VectorXd& x) {
  constexpr double force = 10.0;
  constexpr double elasticity = 2e5;
  constexpr double length = 200.0;
  const double s2 = std::numbers::sqrt2;
  const double volume = length * (2.0 * x[0] + s2 * x[1] + std::sqrt(x[2]) + x[3]);
  const double displacement =
      force * length / elasticity * (2.0 / x[0] + 2.0 * s2 / x[1] - 2.0 * s2 / x[2] + 2.0 / x[3]);
  return VectorXd{{volume, displacement}};
}

VectorXd reinforced_concrete_beam(const VectorXd& x) {
  const double area = x[0];
  const double width = x[1];
  const double depth = x[2];
  const double cost = 29.4 * area + 0.6 * width * depth;
  const double g1 = area * depth - 7.735 * area * area / width - 180.0;
  const double g2 = 4.0 - depth / width;
  return VectorXd{{cost, violation(g1) + violation(g2)}};
}

VectorXd gear_train(const VectorXd& x) {
  constexpr double target = 6.931;
  const double error = std::abs(target - (x[2] / x[0]) * (x[3] / x[1]));
  const double size = x.maxCoeff();
  return VectorXd{{error, size, violation(0.5 - error / target)}};
}

VectorXd welded_beam(const VectorXd& x) {
  constexpr double load = 6000.0;
  constexpr double length = 14.0;
  constexpr double elasticity = 30e6;
  constexpr double shear_modulus = 12e6;
  constexpr double tau_max = 13600.0;
  constexpr double sigma_max = 30000.0;
  const double s2 = std::numbers::sqrt2;
  const double h = x[0], l = x[1], t = x[2], b = x[3];

  const double cost = 1.10471 * h * h * l + 0.04811 * t * b * (14.0 + l);
  const double deflection = 4.0 * load * length * length * length / (elasticity * b * t * t * t);

  const double moment = load * (length + l / 2.0);
  const double radius = std::sqrt(l * l / 4.0 + std::pow((h + t) / 2.0, 2));
  const double inertia = 2.0 * s2 * h * l * (l * l / 12.0 + std::pow((h + t) / 2.0, 2));
  const double tau_second = moment * radius / inertia;
  const double tau_first = load / (s2 * h * l);
  const double tau =
      std::sqrt(tau_first * tau_first + 2.0 * tau_first * tau_second * l / (2.0 * radius) + tau_second * tau_second);
  const double sigma = 6.0 * load * length / (b * t * t);
  const double buckling = 4.013 * elasticity * std::sqrt(t * t * std::pow(b, 6) / 36.0) / (length * length) *
                          (1.0 - t / (2.0 * length) * std::sqrt(elasticity / (4.0 * shear_modulus)));

  const double penalty =
      violation(tau_max - tau) + violation(sigma_max - sigma) + violation(b - h) + violation(buckling - load);
  return VectorXd{{cost, deflection, penalty}};
}

VectorXd disc_brake(const VectorXd& x) {
  const double inner = x[0], outer = x[1], force = x[2], surfaces = x[3];
  const double sq = outer * outer - inner * inner;
  const double cube = outer * outer * outer - inner * inner * inner;
  const double mass = 4.9e-5 * sq * (surfaces - 1.0);
  const double stop_time = 9.82e6 * sq / (force * surfaces * cube);
  const double g1 = (outer - inner) - 20.0;
  const double g2 = 0.4 - force / (3.14 * sq);
  const double g3 = 1.0 - 2.22e-3 * force * cube / (sq * sq);
  const double g4 = 2.66e-2 * force * surfaces * cube / sq - 900.0;
  return VectorXd{{mass, stop_time, violation(g1) + violation(g2) + violation(g3) + violation(g4)}};
}

// Reinforcement area levels (in²) of the concrete beam problem.
const std::vector<double> kBeamAreas = {
    0.20, 0.31, 0.40, 0.44, 0.60, 0.62, 0.79, 0.80, 0.88, 0.93, 1.00, 1.20, 1.24, 1.32, 1.40, 1.55,
    1.58, 1.60, 1.76, 1.80, 1.86, 2.00, 2.17, 2.20, 2.37, 2.40, 2.48, 2.60, 2.64, 2.79, 2.80, 3.00,
    3.08, 3.10, 3.16, 3.41, 3.52, 3.60, 3.72, 3.95, 3.96, 4.00, 4.03, 4.20, 4.34, 4.40, 4.65, 4.74,
    4.80, 4.84, 5.00, 5.28, 5.40, 5.53, 5.72, 6.00, 6.16, 6.32, 6.60, 7.11, 7.20, 7.80, 7.90, 8.00,
    8.40, 8.69, 9.00, 9.48, 10.27, 11.00, 11.06, 11.85, 12.00, 13.00, 14.00, 15.00};

double nearest_level(const std::vector<double>& levels, double v) {
  double best = levels.front();
  for (double l : levels) {
    if (std::abs(l - v) < std::abs(best - v)) best = l;
  }
  return best;
}

Eigen::VectorXd clamp_interior(const Problem& p, Eigen::VectorXd x) {
  for (int i = 0; i < p.d; ++i) {
    const auto [lo, hi] = p.bounds[static_cast<std::size_t>(i)];
    x[i] = std::clamp(x[i], lo + 1e-9, hi - 1e-9);
  }
  return x;
}

}  // namespace

std::vector<std::string> problem_names() {
  return {"zdt3", "four_bar_truss", "reinforced_concrete_beam", "gear_train", "welded_beam", "disc_brake"};
}

Problem make_problem(std::string_view name) {
  Problem p;
  p.name = std::string(name);
  if (name == "zdt3") {
    p.d = 9;
    p.k = 2;
    p.bounds.assign(9, {0.0, 1.0});
    p.reference_native = VectorXd{{11.0, 11.0}};
    p.objective = zdt3;
  } else if (name == "four_bar_truss") {
    constexpr double a = 1.0;  // force / stress
    const double s2 = std::numbers::sqrt2;
    p.d = 4;
    p.k = 2;
    p.bounds = {{a, 3.0 * a}, {s2 * a, 3.0 * a}, {s2 * a, 3.0 * a}, {a, 3.0 * a}};
    p.reference_native = VectorXd{{2967.0243, 0.0383}};
    p.objective = four_bar_truss;
  } else if (name == "reinforced_concrete_beam") {
    p.d = 3;
    p.k = 2;
    p.bounds = {{0.2, 15.0}, {0.0, 20.0}, {0.0, 40.0}};
    p.reference_native = VectorXd{{703.6860, 899.2291}};
    p.discrete_dims = {{0, kBeamAreas}};
    p.objective = reinforced_concrete_beam;
  } else if (name == "gear_train") {
    p.d = 4;
    p.k = 3;
    p.bounds.assign(4, {12.0, 60.0});
    p.reference_native = VectorXd{{6.6764, 59.0, 0.4633}};
    p.integer_dims = {0, 1, 2, 3};
    p.objective = gear_train;
  } else if (name == "welded_beam") {
    p.d = 4;
    p.k = 3;
    p.bounds = {{0.125, 5.0}, {0.1, 10.0}, {0.1, 10.0}, {0.125, 5.0}};
    p.reference_native = VectorXd{{202.8569, 42.0653, 2111643.6209}};
    p.objective = welded_beam;
  } else if (name == "disc_brake") {
    p.d = 4;
    p.k = 3;
    p.bounds = {{55.0, 80.0}, {75.0, 110.0}, {1000.0, 3000.0}, {11.0, 20.0}};
    p.reference_native = VectorXd{{6.1356, 6.3421, 12.9737}};
    p.objective = disc_brake;
  } else {
    std::string known;
    for (const auto& n : problem_names()) known += (known.empty() ? "" : ", ") + n;
    throw std::invalid_argument("unknown problem '" + std::string(name) + "'; supported: " + known);
  }
  return p;
}

Eigen::VectorXd to_native(const Problem& p, const Eigen::VectorXd& x_unit) {
  if (x_unit.size() != p.d) {
    throw std::invalid_argument(p.name + ": expected " + std::to_string(p.d) + " inputs, got " +
                                std::to_string(x_unit.size()));
  }
  Eigen::VectorXd x(p.d);
  for (int i = 0; i < p.d; ++i) {
    const auto [lo, hi] = p.bounds[static_cast<std::size_t>(i)];
    x[i] = lo + std::clamp(x_unit[i], 0.0, 1.0) * (hi - lo);
  }
  for (int i : p.integer_dims) {
    const auto [lo, hi] = p.bounds[static_cast<std::size_t>(i)];
    x[i] = std::clamp(std::round(x[i]), lo, hi);
  }
  for (const auto& [i, levels] : p.discrete_dims) x[i] = nearest_level(levels, x[i]);
  return x;
}

Eigen::VectorXd evaluate_native(const Problem& p, const Eigen::VectorXd& x_native) {
  if (x_native.size() != p.d) throw std::invalid_argument(p.name + ": input dimension mismatch");
  return p.objective(x_native);
}

ObjectiveVector evaluate(const Problem& p, const Eigen::VectorXd& x_unit) {
  const Eigen::VectorXd x = to_native(p, x_unit);
  Eigen::VectorXd g = p.objective(x);
  if (!g.allFinite()) g = p.objective(clamp_interior(p, x));
  if (!g.allFinite()) throw std::domain_error(p.name + ": objective is not finite at the given input");
  return -g;
}

ObjectiveVector reference_max(const Problem& p) { return -p.reference_native; }

}  // namespace nmmo
