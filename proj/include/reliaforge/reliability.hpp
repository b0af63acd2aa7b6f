#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "reliaforge/network.hpp"
#include "reliaforge/paths.hpp"

namespace reliaforge {

struct Evaluation {
  /// pathReliabilities[g * loads + l][k] is the product for path k of that pair.
  std::vector<std::vector<double>> pathReliabilities;
  /// generators x loads.
  Eigen::MatrixXd odReliabilities;
  double systemIndex = 0.0;

  const std::vector<double>& pathsOf(ODPair od) const {
    return pathReliabilities.at(od.generator * static_cast<std::size_t>(odReliabilities.cols()) +
                                od.load);
  }
};

class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Product of the reliabilities of the path's elements.
double pathReliability(const Path& path, const ReliabilityState& state);

/// Parallel-path combination 1 - prod(1 - p_k); an empty list gives 0.
/// Paths are treated as independent even when they share elements.
double odReliability(std::span<const Path> paths, const ReliabilityState& state);

Evaluation systemReliability(const Network& network, const PathSet& paths,
                             const ReliabilityState& state);

/// Mean OD reliability only, without materialising the Evaluation.
double systemIndex(const PathSet& paths, const ReliabilityState& state);

/// Exact partial derivatives of systemIndex with respect to each element
/// reliability. Division-free, so valid at r_i = 0.
Eigen::VectorXd systemGradient(const Network& network, const PathSet& paths,
                               const ReliabilityState& state);

inline constexpr std::size_t kMaxExactElements = 25;

/// Exact two-terminal connectivity probability by enumerating all 2^|E|
/// up/down element states. Throws EvaluationError when |E| > 25.
double exactODReliability(const Network& network, ODPair od, const ReliabilityState& state);

}  // namespace reliaforge
