#pragma once

#include <cstddef>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "reliaforge/network.hpp"
#include "reliaforge/paths.hpp"

namespace reliaforge {

/// Zero-sum payoff matrix. Row i is Blue protecting rowElements[i], column j
/// is Red striking columnElements[j]; entries(i, j) = 1 when both name the
/// same element, otherwise the damage utility of the struck element.
struct PayoffMatrix {
  std::vector<std::size_t> rowElements;
  std::vector<std::size_t> columnElements;
  Eigen::MatrixXd entries;
};

/// Blue's optimal mixed strategy over the payoff rows and the game value.
struct GameSolution {
  Eigen::VectorXd strategy;
  double value = 0.0;
};

class GameError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by pumpBudget when no element can absorb budget.
class GameStalled : public GameError {
 public:
  using GameError::GameError;
};

/// systemIndex with the victim's reliability forced to 0.
double damagedIndex(const PathSet& paths, const ReliabilityState& state, std::size_t victim);

/// y_i = 1 - (R0 - R'_i) for every element.
Eigen::VectorXd damageUtilities(const Network& network, const PathSet& paths,
                                const ReliabilityState& state);

/// Square matrix over `active` (rows and columns alike).
PayoffMatrix buildPayoff(const Eigen::VectorXd& utilities, const std::vector<std::size_t>& active);

/// Rows and columns chosen independently.
PayoffMatrix buildPayoff(const Eigen::VectorXd& utilities, const std::vector<std::size_t>& rows,
                         const std::vector<std::size_t>& columns);

/// maximize v  s.t.  v <= sum_i psi_i * entries(i, j) for every column j,
///                   sum psi = 1, psi >= 0, v free.
/// Works for arbitrary real payoffs, not just utility matrices.
GameSolution solveGame(const PayoffMatrix& payoff);

/// Smallest column expectation of a row strategy.
double guaranteedValue(const PayoffMatrix& payoff, const Eigen::VectorXd& strategy);

inline constexpr double kStrategyFloor = 1e-9;

struct PumpResult {
  double budget = 0.0;
  ReliabilityState state;
};

/// Spends along `allocation` (full-length, one weight per element) until the
/// first weighted element reaches reliability 1, or until `remainingBudget`
/// runs out, whichever is cheaper. Weights at or below `floor` are ignored.
PumpResult pumpBudget(const ReliabilityState& state, const Eigen::VectorXd& allocation,
                      const Eigen::VectorXd& costs, double remainingBudget,
                      double floor = kStrategyFloor);

/// What happens to elements already at reliability 1.
enum class PerfectedColumns {
  /// Perfected elements leave both Blue's rows and Red's columns: they can no
  /// longer be damaged, matching the invulnerable diagonal of the payoff.
  Drop,
  /// Perfected elements leave Blue's rows only and remain Red targets.
  Retain,
};

struct GameConfig {
  double strategyFloor = kStrategyFloor;
  PerfectedColumns perfectedColumns = PerfectedColumns::Drop;
  /// Reliability at or above 1 - perfectTol counts as perfect.
  double perfectTol = 1e-12;
};

struct GameIteration {
  std::size_t index = 0;
  ReliabilityState stateBefore;
  ReliabilityState stateAfter;
  double systemIndexBefore = 0.0;
  Eigen::VectorXd damagedIndices;
  Eigen::VectorXd utilities;
  PayoffMatrix payoff;
  GameSolution solution;
  /// Solution spread over all elements (zero outside the payoff rows).
  Eigen::VectorXd allocation;
  double pumpedBudget = 0.0;
  double systemIndexAfter = 0.0;
};

enum class StopReason { BudgetExhausted, TargetReached, Stalled };

std::string_view stopReasonName(StopReason reason);

struct GameRunResult {
  std::vector<GameIteration> iterations;
  double totalSpent = 0.0;
  ReliabilityState initialState;
  ReliabilityState finalState;
  double initialIndex = 0.0;
  double finalIndex = 0.0;
  StopReason reason = StopReason::BudgetExhausted;
};

/// Repeats evaluate -> utilities -> payoff -> LP -> pump until the budget is
/// spent, the target index is reached, or no element can absorb budget.
GameRunResult runGameAllocation(const Network& network, const PathSet& paths, double totalBudget,
                                double targetIndex, const GameConfig& config = {});

}  // namespace reliaforge
