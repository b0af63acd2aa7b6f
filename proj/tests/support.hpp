#pragma once

// Independent oracles and generators shared by the unit and acceptance suites.
// Nothing here calls into the code path it is used to check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "reliaforge/network.hpp"

namespace reliaforge::testing {

inline std::string dataFile(const std::string& name) { return std::string(RELIAFORGE_DATA_DIR) + "/" + name; }

/// Paths as (bus sequence, element sequence) by trying every ordered subset of
/// intermediate buses and every choice of parallel line between neighbours.
inline std::set<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> bruteForcePaths(
    const Network& net, ODPair od) {
  std::set<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> out;
  const std::size_t nb = net.buses().size();
  const std::size_t s = net.busIndex(net.generators()[od.generator].bus);
  const std::size_t t = net.busIndex(net.loads()[od.load].bus);
  const std::size_t gen = net.generatorElementIndex(od.generator);
  if (s == t) {
    out.insert({{s}, {gen}});
    return out;
  }
  std::vector<std::size_t> others;
  for (std::size_t b = 0; b < nb; ++b)
    if (b != s && b != t) others.push_back(b);
  auto linesBetween = [&](std::size_t a, std::size_t b) {
    std::vector<std::size_t> ls;
    for (std::size_t l = 0; l < net.lines().size(); ++l) {
      const auto x = net.busIndex(net.lines()[l].from), y = net.busIndex(net.lines()[l].to);
      if ((x == a && y == b) || (x == b && y == a)) ls.push_back(net.lineElementIndex(l));
    }
    return ls;
  };
  const std::size_t k = others.size();
  for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
    std::vector<std::size_t> chosen;
    for (std::size_t i = 0; i < k; ++i)
      if (mask >> i & 1u) chosen.push_back(others[i]);
    std::sort(chosen.begin(), chosen.end());
    do {
      std::vector<std::size_t> seq{s};
      seq.insert(seq.end(), chosen.begin(), chosen.end());
      seq.push_back(t);
      // Expand every combination of parallel lines along the sequence.
      std::vector<std::vector<std::size_t>> options;
      bool ok = true;
      for (std::size_t i = 0; i + 1 < seq.size() && ok; ++i) {
        options.push_back(linesBetween(seq[i], seq[i + 1]));
        ok = !options.back().empty();
      }
      if (!ok) continue;
      std::vector<std::size_t> pick(options.size(), 0);
      for (;;) {
        std::vector<std::size_t> elems{gen};
        for (std::size_t i = 0; i < options.size(); ++i) elems.push_back(options[i][pick[i]]);
        out.insert({seq, elems});
        std::size_t i = 0;
        while (i < pick.size() && ++pick[i] == options[i].size()) pick[i++] = 0;
        if (i == pick.size()) break;
      }
    } while (std::next_permutation(chosen.begin(), chosen.end()));
  }
  return out;
}

/// Random valid network with up to `maxBuses` buses.
inline Network randomNetwork(std::mt19937_64& rng, std::size_t maxBuses, bool allowParallel = true) {
  std::uniform_int_distribution<std::size_t> busCount(2, maxBuses);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t nb = busCount(rng);
  std::vector<std::string> buses;
  for (std::size_t i = 0; i < nb; ++i) buses.push_back("b" + std::to_string(i));
  std::uniform_int_distribution<std::size_t> pickBus(0, nb - 1);
  std::vector<Line> lines;
  std::set<std::pair<std::size_t, std::size_t>> used;
  const std::size_t lineCount = std::uniform_int_distribution<std::size_t>(0, nb * 2)(rng);
  for (std::size_t i = 0; i < lineCount; ++i) {
    auto a = pickBus(rng), b = pickBus(rng);
    if (a == b) continue;
    if (!allowParallel && !used.insert({std::min(a, b), std::max(a, b)}).second) continue;
    lines.push_back({{"l" + std::to_string(i), ElementKind::Line, unit(rng), 0.5 + unit(rng)},
                     buses[a], buses[b]});
  }
  std::vector<Generator> gens;
  const std::size_t ng = std::uniform_int_distribution<std::size_t>(1, 2)(rng);
  for (std::size_t g = 0; g < ng; ++g)
    gens.push_back({{"g" + std::to_string(g), ElementKind::Generator, unit(rng), 1.0 + unit(rng)},
                    buses[pickBus(rng)]});
  std::vector<Load> loads;
  const std::size_t nl = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
  for (std::size_t l = 0; l < nl; ++l) loads.push_back({"L" + std::to_string(l), buses[pickBus(rng)]});
  return Network(buses, gens, lines, loads, unit(rng) < 0.5 ? std::optional<double>(unit(rng)) : std::nullopt);
}

/// Central finite-difference gradient.
inline Eigen::VectorXd finiteDifference(const std::function<double(const Eigen::VectorXd&)>& f,
                                        const Eigen::VectorXd& x, double h = 1e-6) {
  Eigen::VectorXd g(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    Eigen::VectorXd a = x, b = x;
    a(i) += h;
    b(i) -= h;
    g(i) = (f(a) - f(b)) / (2 * h);
  }
  return g;
}

/// Best guaranteed value over every strategy on the simplex grid with
/// denominator `resolution` (all compositions of `resolution` into n parts).
inline double simplexGridBest(const Eigen::MatrixXd& payoff, int resolution,
                              std::size_t* visited = nullptr) {
  const auto n = payoff.rows();
  std::vector<int> parts(static_cast<std::size_t>(n), 0);
  double best = -1e300;
  std::size_t count = 0;
  Eigen::VectorXd psi(n);
  std::function<void(Eigen::Index, int)> rec = [&](Eigen::Index i, int left) {
    if (i == n - 1) {
      parts[static_cast<std::size_t>(i)] = left;
      for (Eigen::Index j = 0; j < n; ++j) psi(j) = parts[static_cast<std::size_t>(j)] / double(resolution);
      best = std::max(best, (payoff.transpose() * psi).minCoeff());
      ++count;
      return;
    }
    for (int v = 0; v <= left; ++v) {
      parts[static_cast<std::size_t>(i)] = v;
      rec(i + 1, left - v);
    }
  };
  rec(0, resolution);
  if (visited) *visited = count;
  return best;
}

/// Per-OD published path products, initial RBTS reliabilities.
struct PublishedOd {
  const char* generator;
  const char* load;
  std::vector<std::vector<int>> busSequences;
  std::vector<double> pathProducts;
  double odReliability;
};

inline const std::vector<PublishedOd>& publishedRtbs() {
  static const std::vector<PublishedOd> data = {
      {"g1", "L1", {{1, 2}, {1, 3, 4, 2}, {1, 3, 5, 4, 2}}, {0.733, 0.591, 0.388}, 0.933},
      {"g1", "L2", {{1, 2, 4, 3}, {1, 2, 4, 5, 3}, {1, 3}}, {0.816, 0.531, 0.348}, 0.944},
      {"g1", "L3", {{1, 2, 4}, {1, 3, 4}, {1, 3, 5, 4}}, {0.584, 0.742, 0.487}, 0.945},
      {"g1", "L4", {{1, 2, 4, 3, 5, 6}, {1, 2, 4, 5, 6}, {1, 3, 4, 5, 6}, {1, 3, 5, 6}},
       {0.461, 0.324, 0.412, 0.71}, 0.938},
      {"g2", "L1", {{2}}, {0.85}, 0.85},
      {"g2", "L2", {{2, 1, 3}, {2, 4, 3}, {2, 4, 5, 3}}, {0.614, 0.616, 0.404}, 0.912},
      {"g2", "L3", {{2, 1, 3, 4}, {2, 1, 3, 5, 4}, {2, 4}}, {0.677, 0.558, 0.366}, 0.91},
      {"g2", "L4", {{2, 1, 3, 4, 5, 6}, {2, 1, 3, 5, 6}, {2, 4, 3, 5, 6}, {2, 4, 5, 6}},
       {0.31, 0.534, 0.535, 0.376}, 0.907},
  };
  return data;
}

/// Published single-iteration game snapshot, elements in r1..r7, g1, g2 order.
struct PublishedIteration {
  std::vector<const char*> ids{"r1", "r2", "r3", "r4", "r5", "r6", "r7", "g1", "g2"};
  std::vector<double> initial{0.897, 0.797, 0.805, 0.909, 0.966, 0.617, 0.9, 0.91, 0.85};
  std::vector<double> damaged{0.707, 0.763, 0.784, 0.804, 0.804, 0.86, 0.687, 0.447, 0.47};
  std::vector<double> utilities{0.79, 0.846, 0.867, 0.887, 0.887, 0.943, 0.77, 0.53, 0.553};
  std::vector<double> strategy{0, 0, 0, 0, 0, 0, 0.002, 0.512, 0.486};
  std::vector<double> after{0.897, 0.797, 0.805, 0.909, 0.966, 0.617, 0.901, 1.0, 0.935};
};

}  // namespace reliaforge::testing
