#include "reliaforge/reliability.hpp"

#include <cstdint>
#include <string>

namespace reliaforge {

namespace {

void checkState(const ReliabilityState& state, std::size_t element) {
  if (element >= static_cast<std::size_t>(state.size()))
    throw EvaluationError("element index " + std::to_string(element) +
                          " not covered by reliability state of size " +
                          std::to_string(state.size()));
}

}  // namespace

double pathReliability(const Path& path, const ReliabilityState& state) {
  double p = 1.0;
  for (auto e : path.elements) {
    checkState(state, e);
    p *= state(static_cast<Eigen::Index>(e));
  }
  return p;
}

double odReliability(std::span<const Path> paths, const ReliabilityState& state) {
  if (paths.empty()) return 0.0;
  double allDown = 1.0;
  for (const auto& path : paths) {
    if (!(path.od == paths.front().od))
      throw EvaluationError("odReliability called with paths from different OD pairs");
    allDown *= 1.0 - pathReliability(path, state);
  }
  return 1.0 - allDown;
}

Evaluation systemReliability(const Network& network, const PathSet& paths,
                             const ReliabilityState& state) {
  Evaluation eval;
  const auto gens = static_cast<Eigen::Index>(paths.generatorCount());
  const auto loads = static_cast<Eigen::Index>(paths.loadCount());
  eval.odReliabilities.resize(gens, loads);
  for (const auto od : network.odPairs()) {
    const auto& list = paths[od];
    std::vector<double> products;
    products.reserve(list.size());
    for (const auto& p : list) products.push_back(pathReliability(p, state));
    eval.pathReliabilities.push_back(std::move(products));
    eval.odReliabilities(static_cast<Eigen::Index>(od.generator),
                         static_cast<Eigen::Index>(od.load)) = odReliability(list, state);
  }
  eval.systemIndex = eval.odReliabilities.mean();
  return eval;
}

double systemIndex(const PathSet& paths, const ReliabilityState& state) {
  double sum = 0.0;
  for (std::size_t g = 0; g < paths.generatorCount(); ++g)
    for (std::size_t l = 0; l < paths.loadCount(); ++l) sum += odReliability(paths[{g, l}], state);
  return sum / static_cast<double>(paths.odCount());
}

Eigen::VectorXd systemGradient(const Network& network, const PathSet& paths,
                               const ReliabilityState& state) {
  Eigen::VectorXd grad = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(network.elementCount()));
  const double scale = 1.0 / static_cast<double>(paths.odCount());
  std::vector<double> down, downPrefix, downSuffix, prefix, suffix;
  for (const auto od : network.odPairs()) {
    const auto& list = paths[od];
    const std::size_t n = list.size();
    if (n == 0) continue;
    // dR/dp_k = prod_{m != k} (1 - p_m)
    down.resize(n);
    for (std::size_t k = 0; k < n; ++k) down[k] = 1.0 - pathReliability(list[k], state);
    downPrefix.assign(n + 1, 1.0);
    downSuffix.assign(n + 1, 1.0);
    for (std::size_t k = 0; k < n; ++k) downPrefix[k + 1] = downPrefix[k] * down[k];
    for (std::size_t k = n; k-- > 0;) downSuffix[k] = downSuffix[k + 1] * down[k];

    for (std::size_t k = 0; k < n; ++k) {
      const double weight = downPrefix[k] * downSuffix[k + 1] * scale;
      const auto& elems = list[k].elements;
      const std::size_t m = elems.size();
      // dp_k/dr_i = product of the other elements on the path
      prefix.assign(m + 1, 1.0);
      suffix.assign(m + 1, 1.0);
      for (std::size_t j = 0; j < m; ++j)
        prefix[j + 1] = prefix[j] * state(static_cast<Eigen::Index>(elems[j]));
      for (std::size_t j = m; j-- > 0;)
        suffix[j] = suffix[j + 1] * state(static_cast<Eigen::Index>(elems[j]));
      for (std::size_t j = 0; j < m; ++j)
        grad(static_cast<Eigen::Index>(elems[j])) += weight * prefix[j] * suffix[j + 1];
    }
  }
  return grad;
}

double exactODReliability(const Network& network, ODPair od, const ReliabilityState& state) {
  const std::size_t n = network.elementCount();
  if (n > kMaxExactElements)
    throw EvaluationError("exact enumeration limited to " + std::to_string(kMaxExactElements) +
                          " elements, network has " + std::to_string(n));
  const std::size_t busCount = network.buses().size();
  const std::size_t origin = network.busIndex(network.generators().at(od.generator).bus);
  const std::size_t target = network.busIndex(network.loads().at(od.load).bus);
  const std::size_t genElement = network.generatorElementIndex(od.generator);

  std::vector<std::pair<std::size_t, std::size_t>> ends;
  for (const auto& line : network.lines())
    ends.emplace_back(network.busIndex(line.from), network.busIndex(line.to));

  double total = 0.0;
  std::vector<bool> reached(busCount);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    if (!(mask >> genElement & 1u)) continue;
    double weight = 1.0;
    for (std::size_t i = 0; i < n && weight != 0.0; ++i) {
      const double r = state(static_cast<Eigen::Index>(i));
      weight *= (mask >> i & 1u) ? r : 1.0 - r;
    }
    if (weight == 0.0) continue;
    // Fixed-point relaxation over up lines; bus counts here are tiny.
    std::fill(reached.begin(), reached.end(), false);
    reached[origin] = true;
    for (bool grew = true; grew && !reached[target];) {
      grew = false;
      for (std::size_t l = 0; l < ends.size(); ++l) {
        if (!(mask >> network.lineElementIndex(l) & 1u)) continue;
        auto [a, b] = ends[l];
        if (reached[a] != reached[b]) {
          reached[a] = reached[b] = true;
          grew = true;
        }
      }
    }
    if (reached[target]) total += weight;
  }
  return total;
}

}  // namespace reliaforge
