#include "reliaforge/traditional.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "reliaforge/reliability.hpp"

namespace reliaforge {

namespace {

double budgetSpent(const Eigen::VectorXd& x, const Eigen::VectorXd& costs, double lambda,
                   const Eigen::VectorXd& upper, Eigen::VectorXd& out) {
  out = (x - lambda * costs).cwiseMax(0.0).cwiseMin(upper);
  return costs.dot(out);
}

struct Ascent {
  const PathSet& paths;
  const Network& network;
  const ReliabilityState& base;
  const Eigen::VectorXd& upper;
  const Eigen::VectorXd& costs;
  double budget;
  const SolverConfig& config;

  double value(const Eigen::VectorXd& x) const { return systemIndex(paths, base + x); }
  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const {
    return systemGradient(network, paths, base + x);
  }
  Eigen::VectorXd project(const Eigen::VectorXd& x) const {
    return projectOntoBudget(x, upper, costs, budget);
  }
  double residual(const Eigen::VectorXd& x, const Eigen::VectorXd& g) const {
    return (project(x + g) - x).norm();
  }

  Eigen::VectorXd run(Eigen::VectorXd x) const {
    x = project(x);
    double f = value(x);
    double step = 1.0;
    for (std::size_t iter = 0; iter < config.maxIterations; ++iter) {
      const Eigen::VectorXd g = gradient(x);
      if (residual(x, g) <= config.kktTol * 0.5) break;
      Eigen::VectorXd next;
      double fNext = f;
      bool accepted = false;
      for (; step > 1e-14; step *= 0.5) {
        next = project(x + step * g);
        fNext = value(next);
        // Armijo condition along the projection arc.
        if (fNext >= f + 1e-4 * g.dot(next - x)) {
          accepted = true;
          break;
        }
      }
      if (!accepted) break;
      const double gain = fNext - f;
      x = std::move(next);
      f = fNext;
      step = std::min(step * 2.0, 1e4);
      if (gain < config.gainTol && residual(x, gradient(x)) <= config.kktTol) break;
    }
    return x;
  }
};

}  // namespace

Eigen::VectorXd projectOntoBudget(const Eigen::VectorXd& point, const Eigen::VectorXd& upper,
                                  const Eigen::VectorXd& costs, double budget) {
  Eigen::VectorXd out;
  if (budgetSpent(point, costs, 0.0, upper, out) <= budget) return out;
  // Shift every coordinate down by lambda * c_i; spent(lambda) is continuous
  // and nonincreasing, and reaches 0 by lambda = max(point_i / c_i).
  double lo = 0.0;
  double hi = point.cwiseQuotient(costs).maxCoeff();
  for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (budgetSpent(point, costs, mid, upper, out) > budget)
      lo = mid;
    else
      hi = mid;
  }
  budgetSpent(point, costs, hi, upper, out);
  return out;
}

Allocation allocateTraditional(const Network& network, const PathSet& paths, double budget,
                               const SolverConfig& config,
                               std::span<const Eigen::VectorXd> warmStarts) {
  if (!(budget >= 0.0)) throw std::invalid_argument("budget must be nonnegative");
  const ReliabilityState base = network.initialState();
  const Eigen::VectorXd upper = (1.0 - base.array()).matrix();
  const Eigen::VectorXd costs = network.costs();
  const auto n = base.size();
  Ascent ascent{paths, network, base, upper, costs, budget, config};

  Eigen::VectorXd best = Eigen::VectorXd::Zero(n);
  double bestValue = ascent.value(best);
  if (budget > 0.0) {
    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto consider = [&](const Eigen::VectorXd& start) {
      Eigen::VectorXd x = ascent.run(start);
      const double v = ascent.value(x);
      // Strict improvement only: on ties the earlier start wins.
      if (v > bestValue) {
        bestValue = v;
        best = std::move(x);
      }
    };
    for (const auto& w : warmStarts) consider(w);
    consider(Eigen::VectorXd::Zero(n));
    for (std::size_t s = 1; s < config.numStarts; ++s) {
      Eigen::VectorXd start(n);
      for (Eigen::Index i = 0; i < n; ++i) start(i) = unit(rng) * upper(i);
      const double spent = costs.dot(start);
      if (spent > budget && spent > 0.0) start *= budget / spent;
      consider(start);
    }
  }

  Allocation a;
  a.increments = best;
  a.budget = budget;
  a.spent = costs.dot(best);
  a.resultingState = (base + best).cwiseMin(1.0);
  a.achievedIndex = systemIndex(paths, a.resultingState);
  a.kktResidual = ascent.residual(best, ascent.gradient(best));
  return a;
}

std::vector<double> budgetGrid(double from, double to, double step) {
  if (!(from >= 0.0) || !(to >= from) || !(step > 0.0))
    throw std::invalid_argument("sweep requires 0 <= from <= to and step > 0");
  const auto count = static_cast<std::size_t>(std::floor((to - from) / step + 1e-9)) + 1;
  std::vector<double> grid;
  grid.reserve(count);
  for (std::size_t k = 0; k < count; ++k)
    grid.push_back(std::min(to, from + static_cast<double>(k) * step));
  return grid;
}

std::vector<SweepPoint> sweepBudget(const Network& network, const PathSet& paths, double from,
                                    double to, double step, const SolverConfig& config) {
  std::vector<SweepPoint> points;
  for (double b : budgetGrid(from, to, step)) {
    std::vector<Eigen::VectorXd> warm;
    if (!points.empty()) warm.push_back(points.back().allocation.increments);
    points.push_back({b, allocateTraditional(network, paths, b, config, warm)});
  }
  return points;
}

}  // namespace reliaforge
