#include "reliaforge/game.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "reliaforge/reliability.hpp"
#include "reliaforge/simplex.hpp"

namespace reliaforge {

double damagedIndex(const PathSet& paths, const ReliabilityState& state, std::size_t victim) {
  if (victim >= static_cast<std::size_t>(state.size()))
    throw GameError("unknown victim element index " + std::to_string(victim));
  ReliabilityState damaged = state;
  damaged(static_cast<Eigen::Index>(victim)) = 0.0;
  return systemIndex(paths, damaged);
}

Eigen::VectorXd damageUtilities(const Network& network, const PathSet& paths,
                                const ReliabilityState& state) {
  const double base = systemIndex(paths, state);
  Eigen::VectorXd y(static_cast<Eigen::Index>(network.elementCount()));
  for (std::size_t i = 0; i < network.elementCount(); ++i)
    y(static_cast<Eigen::Index>(i)) =
        std::clamp(1.0 - (base - damagedIndex(paths, state, i)), 0.0, 1.0);
  return y;
}

PayoffMatrix buildPayoff(const Eigen::VectorXd& utilities, const std::vector<std::size_t>& active) {
  return buildPayoff(utilities, active, active);
}

PayoffMatrix buildPayoff(const Eigen::VectorXd& utilities, const std::vector<std::size_t>& rows,
                         const std::vector<std::size_t>& columns) {
  if (rows.empty() || columns.empty()) throw GameError("payoff matrix needs at least one row and column");
  PayoffMatrix payoff{rows, columns, {}};
  payoff.entries.resize(static_cast<Eigen::Index>(rows.size()),
                        static_cast<Eigen::Index>(columns.size()));
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j] >= static_cast<std::size_t>(utilities.size()))
      throw GameError("payoff column element has no utility");
    const double y = utilities(static_cast<Eigen::Index>(columns[j]));
    for (std::size_t i = 0; i < rows.size(); ++i)
      payoff.entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          rows[i] == columns[j] ? 1.0 : y;
  }
  return payoff;
}

GameSolution solveGame(const PayoffMatrix& payoff) {
  const auto k = payoff.entries.rows();
  const auto cols = payoff.entries.cols();
  if (k == 0 || cols == 0) throw GameError("empty payoff matrix");

  // Variables: psi_0..psi_{k-1}, v.
  LinearProgram<double> lp;
  lp.objective = Eigen::VectorXd::Zero(k + 1);
  lp.objective(k) = 1.0;
  lp.constraints = Eigen::MatrixXd::Zero(cols + 1, k + 1);
  lp.constraints.topLeftCorner(cols, k) = -payoff.entries.transpose();
  lp.constraints.col(k).head(cols).setOnes();
  lp.constraints.row(cols).head(k).setOnes();
  lp.senses.assign(static_cast<std::size_t>(cols), ConstraintSense::LessEqual);
  lp.senses.push_back(ConstraintSense::Equal);
  lp.rhs = Eigen::VectorXd::Zero(cols + 1);
  lp.rhs(cols) = 1.0;
  lp.lower = Eigen::VectorXd::Zero(k + 1);
  lp.lower(k) = -std::numeric_limits<double>::infinity();

  const auto result = simplexSolve(lp);
  // A matrix game always has a bounded, feasible LP.
  if (result.status != LpStatus::Optimal) throw GameError("matrix game LP did not reach an optimum");

  GameSolution solution;
  solution.strategy = result.x.head(k).cwiseMax(0.0);
  solution.strategy /= solution.strategy.sum();
  solution.value = result.x(k);
  return solution;
}

double guaranteedValue(const PayoffMatrix& payoff, const Eigen::VectorXd& strategy) {
  return (payoff.entries.transpose() * strategy).minCoeff();
}

PumpResult pumpBudget(const ReliabilityState& state, const Eigen::VectorXd& allocation,
                      const Eigen::VectorXd& costs, double remainingBudget, double floor) {
  if (remainingBudget < 0.0) throw GameError("remaining budget must be nonnegative");
  if (allocation.size() != state.size() || costs.size() != state.size())
    throw GameError("pumpBudget: state, allocation and cost sizes differ");

  double saturation = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < state.size(); ++i) {
    if (allocation(i) <= floor || state(i) >= 1.0) continue;
    saturation = std::min(saturation, (1.0 - state(i)) * costs(i) / allocation(i));
  }
  if (!std::isfinite(saturation))
    throw GameStalled("no element with positive weight is below reliability 1");

  PumpResult out;
  out.budget = std::min(remainingBudget, saturation);
  out.state = state;
  for (Eigen::Index i = 0; i < state.size(); ++i) {
    if (allocation(i) <= floor || state(i) >= 1.0) continue;
    const double cap = (1.0 - state(i)) * costs(i) / allocation(i);
    // Everything that saturates at this pump level lands on 1 exactly.
    out.state(i) = cap <= out.budget * (1.0 + 1e-12)
                       ? 1.0
                       : std::min(1.0, state(i) + allocation(i) * out.budget / costs(i));
  }
  return out;
}

std::string_view stopReasonName(StopReason reason) {
  switch (reason) {
    case StopReason::BudgetExhausted: return "budget-exhausted";
    case StopReason::TargetReached: return "target-reached";
    case StopReason::Stalled: return "stalled";
  }
  return "unknown";
}

GameRunResult runGameAllocation(const Network& network, const PathSet& paths, double totalBudget,
                                double targetIndex, const GameConfig& config) {
  if (!(totalBudget >= 0.0)) throw GameError("total budget must be nonnegative");
  const std::size_t n = network.elementCount();
  const Eigen::VectorXd costs = network.costs();

  GameRunResult run;
  run.initialState = network.initialState();
  run.initialIndex = systemIndex(paths, run.initialState);
  ReliabilityState state = run.initialState;
  double current = run.initialIndex;
  double remaining = totalBudget;

  // Each iteration saturates an element or spends the remainder.
  const std::size_t guard = n + 2;
  for (;;) {
    if (current >= targetIndex - 1e-9) {
      run.reason = StopReason::TargetReached;
      break;
    }
    if (remaining <= 1e-12 * std::max(1.0, totalBudget)) {
      run.reason = StopReason::BudgetExhausted;
      break;
    }
    std::vector<std::size_t> rows, all;
    for (std::size_t i = 0; i < n; ++i) {
      all.push_back(i);
      if (state(static_cast<Eigen::Index>(i)) < 1.0 - config.perfectTol) rows.push_back(i);
    }
    if (rows.empty() || run.iterations.size() >= guard) {
      run.reason = StopReason::Stalled;
      break;
    }

    GameIteration it;
    it.index = run.iterations.size() + 1;
    it.stateBefore = state;
    it.systemIndexBefore = current;
    it.damagedIndices.resize(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i)
      it.damagedIndices(static_cast<Eigen::Index>(i)) = damagedIndex(paths, state, i);
    it.utilities = (1.0 - (current - it.damagedIndices.array())).cwiseMax(0.0).cwiseMin(1.0);
    it.payoff = buildPayoff(it.utilities, rows,
                            config.perfectedColumns == PerfectedColumns::Drop ? rows : all);
    it.solution = solveGame(it.payoff);
    it.allocation = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    for (std::size_t r = 0; r < rows.size(); ++r)
      it.allocation(static_cast<Eigen::Index>(rows[r])) =
          it.solution.strategy(static_cast<Eigen::Index>(r));

    PumpResult pumped;
    try {
      pumped = pumpBudget(state, it.allocation, costs, remaining, config.strategyFloor);
    } catch (const GameStalled&) {
      run.reason = StopReason::Stalled;
      break;
    }
    it.pumpedBudget = pumped.budget;
    it.stateAfter = std::move(pumped.state);
    it.systemIndexAfter = systemIndex(paths, it.stateAfter);

    state = it.stateAfter;
    current = it.systemIndexAfter;
    remaining -= it.pumpedBudget;
    run.totalSpent += it.pumpedBudget;
    run.iterations.push_back(std::move(it));
  }
  run.finalState = state;
  run.finalIndex = current;
  return run;
}

}  // namespace reliaforge
