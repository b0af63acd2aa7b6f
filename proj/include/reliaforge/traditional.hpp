#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "reliaforge/network.hpp"
#include "reliaforge/paths.hpp"

namespace reliaforge {

struct SolverConfig {
  std::size_t numStarts = 64;
  std::uint64_t seed = 42;
  double optimalityTol = 1e-6;
  /// Bound on ||P(x + grad) - x|| at the returned point.
  double kktTol = 1e-6;
  /// A start stops once an accepted step gains less than this.
  double gainTol = 1e-10;
  std::size_t maxIterations = 20000;
};

struct Allocation {
  Eigen::VectorXd increments;
  double budget = 0.0;
  double spent = 0.0;
  ReliabilityState resultingState;
  double achievedIndex = 0.0;
  /// Projected-gradient norm at the returned point.
  double kktResidual = 0.0;
};

/// Euclidean projection onto {0 <= x <= upper, costs . x <= budget}.
Eigen::VectorXd projectOntoBudget(const Eigen::VectorXd& point, const Eigen::VectorXd& upper,
                                  const Eigen::VectorXd& costs, double budget);

/// Maximizes the system index over reliability increments x with
/// x >= 0, r0 + x <= 1 and sum c_i x_i <= budget, using multi-start
/// projected gradient ascent with backtracking. Deterministic for a fixed
/// config. `warmStarts` are tried before the seeded random starts.
Allocation allocateTraditional(const Network& network, const PathSet& paths, double budget,
                               const SolverConfig& config = {},
                               std::span<const Eigen::VectorXd> warmStarts = {});

struct SweepPoint {
  double budget = 0.0;
  Allocation allocation;
};

/// Budgets from, from + step, ..., up to `to` (inclusive). Each point is
/// warm-started from the previous point's allocation, which keeps the
/// achieved index nondecreasing.
std::vector<SweepPoint> sweepBudget(const Network& network, const PathSet& paths, double from,
                                    double to, double step, const SolverConfig& config = {});

/// The budget grid sweepBudget visits.
std::vector<double> budgetGrid(double from, double to, double step);

}  // namespace reliaforge
