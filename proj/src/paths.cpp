#include "reliaforge/paths.hpp"

#include <algorithm>
#include <string>
#include <tuple>

namespace reliaforge {

namespace {

struct Edge {
  std::size_t line;
  std::size_t neighbor;
};

class Enumerator {
 public:
  Enumerator(const Network& network, std::size_t cap) : network_(network), cap_(cap) {
    adjacency_.resize(network.buses().size());
    for (std::size_t i = 0; i < network.lines().size(); ++i) {
      const auto& line = network.lines()[i];
      const std::size_t a = network.busIndex(line.from);
      const std::size_t b = network.busIndex(line.to);
      adjacency_[a].push_back({network.lineElementIndex(i), b});
      adjacency_[b].push_back({network.lineElementIndex(i), a});
    }
    for (auto& edges : adjacency_)
      std::sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) {
        return std::tie(x.neighbor, x.line) < std::tie(y.neighbor, y.line);
      });
  }

  std::vector<Path> run(ODPair od) {
    out_.clear();
    const std::size_t origin = network_.busIndex(network_.generators()[od.generator].bus);
    target_ = network_.busIndex(network_.loads()[od.load].bus);
    visited_.assign(network_.buses().size(), false);
    current_ = Path{od, {origin}, {network_.generatorElementIndex(od.generator)}};
    visited_[origin] = true;
    dfs(origin);
    // Adjacency is sorted by neighbor then line, so DFS already emits paths in
    // lexicographic (bus sequence, element sequence) order.
    return std::move(out_);
  }

 private:
  void dfs(std::size_t bus) {
    if (bus == target_) {
      if (out_.size() >= cap_)
        throw PathLimitExceeded("more than " + std::to_string(cap_) + " paths between '" +
                                network_.generators()[current_.od.generator].element.id +
                                "' and '" + network_.loads()[current_.od.load].id + "'");
      out_.push_back(current_);
      return;
    }
    for (const auto& edge : adjacency_[bus]) {
      if (visited_[edge.neighbor]) continue;
      visited_[edge.neighbor] = true;
      current_.buses.push_back(edge.neighbor);
      current_.elements.push_back(edge.line);
      dfs(edge.neighbor);
      current_.buses.pop_back();
      current_.elements.pop_back();
      visited_[edge.neighbor] = false;
    }
  }

  const Network& network_;
  std::size_t cap_;
  std::vector<std::vector<Edge>> adjacency_;
  std::vector<bool> visited_;
  std::size_t target_ = 0;
  Path current_;
  std::vector<Path> out_;
};

}  // namespace

std::size_t PathSet::totalPaths() const {
  std::size_t n = 0;
  for (const auto& list : paths_) n += list.size();
  return n;
}

PathSet enumeratePaths(const Network& network, std::size_t maxPathsPerOd) {
  PathSet set(network.generators().size(), network.loads().size());
  Enumerator enumerator(network, maxPathsPerOd);
  for (const auto od : network.odPairs()) set[od] = enumerator.run(od);
  return set;
}

Eigen::MatrixXi pathCount(const PathSet& paths) {
  Eigen::MatrixXi counts(static_cast<Eigen::Index>(paths.generatorCount()),
                         static_cast<Eigen::Index>(paths.loadCount()));
  for (std::size_t g = 0; g < paths.generatorCount(); ++g)
    for (std::size_t l = 0; l < paths.loadCount(); ++l)
      counts(static_cast<Eigen::Index>(g), static_cast<Eigen::Index>(l)) =
          static_cast<int>(paths[ODPair{g, l}].size());
  return counts;
}

}  // namespace reliaforge
