#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "reliaforge/network.hpp"

namespace reliaforge {

/// A simple generator-to-load path. `elements` holds element indices: the
/// origin generator first, then the traversed lines in order.
struct Path {
  ODPair od;
  std::vector<std::size_t> buses;
  std::vector<std::size_t> elements;

  bool operator==(const Path&) const = default;
};

/// All simple paths for every OD pair, stored row-major (generator, load).
class PathSet {
 public:
  PathSet(std::size_t generatorCount, std::size_t loadCount)
      : loadCount_(loadCount), paths_(generatorCount * loadCount) {}

  std::size_t generatorCount() const { return loadCount_ == 0 ? 0 : paths_.size() / loadCount_; }
  std::size_t loadCount() const { return loadCount_; }
  std::size_t odCount() const { return paths_.size(); }

  const std::vector<Path>& operator[](ODPair od) const { return paths_.at(slot(od)); }
  std::vector<Path>& operator[](ODPair od) { return paths_.at(slot(od)); }

  std::size_t totalPaths() const;

  bool operator==(const PathSet&) const = default;

 private:
  std::size_t slot(ODPair od) const { return od.generator * loadCount_ + od.load; }

  std::size_t loadCount_;
  std::vector<std::vector<Path>> paths_;
};

class PathLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultPathCap = 100000;

/// Depth-first enumeration of every simple path (no repeated bus) from each
/// generator's bus to each load's bus. A load sharing its generator's bus gets
/// the single zero-line path. Parallel lines yield one path per line.
/// Paths are ordered lexicographically by bus declaration index, then by
/// element index. Worst case is exponential in bus count; more than
/// `maxPathsPerOd` paths for one pair throws PathLimitExceeded.
PathSet enumeratePaths(const Network& network, std::size_t maxPathsPerOd = kDefaultPathCap);

/// Paths per OD pair, as a generators x loads matrix.
Eigen::MatrixXi pathCount(const PathSet& paths);

}  // namespace reliaforge
