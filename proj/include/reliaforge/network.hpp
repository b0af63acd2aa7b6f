#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

namespace reliaforge {

enum class ElementKind { Generator, Line };

struct Element {
  std::string id;
  ElementKind kind = ElementKind::Line;
  double reliability = 0.0;
  double cost = 1.0;

  bool operator==(const Element&) const = default;
};

struct Generator {
  Element element;
  std::string bus;

  bool operator==(const Generator&) const = default;
};

struct Line {
  Element element;
  std::string from;
  std::string to;

  bool operator==(const Line&) const = default;
};

struct Load {
  std::string id;
  std::string bus;

  bool operator==(const Load&) const = default;
};

/// Origin-destination pair, by position in Network::generators() / loads().
struct ODPair {
  std::size_t generator = 0;
  std::size_t load = 0;

  bool operator==(const ODPair&) const = default;
};

/// Reliability of every element, indexed by Network element position.
using ReliabilityState = Eigen::VectorXd;

/// Thrown for any malformed or inconsistent network description.
class NetworkError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kDefaultLineCost = 1.0;
inline constexpr double kDefaultGeneratorCost = 2.0;

/// Immutable reliability graph: buses, generators, undirected lines, loads.
///
/// Elements are numbered lines first, then generators, each in declaration
/// order. Every per-element vector in the library (reliability states,
/// gradients, increments) uses this numbering.
class Network {
 public:
  /// Validates every invariant; throws NetworkError on violation.
  Network(std::vector<std::string> buses, std::vector<Generator> generators,
          std::vector<Line> lines, std::vector<Load> loads,
          std::optional<double> budget = std::nullopt);

  const std::vector<std::string>& buses() const { return buses_; }
  const std::vector<Generator>& generators() const { return generators_; }
  const std::vector<Line>& lines() const { return lines_; }
  const std::vector<Load>& loads() const { return loads_; }
  const std::optional<double>& budget() const { return budget_; }

  std::size_t elementCount() const { return lines_.size() + generators_.size(); }
  const Element& element(std::size_t index) const;
  std::optional<std::size_t> elementIndex(std::string_view id) const;
  std::size_t lineElementIndex(std::size_t line) const { return line; }
  std::size_t generatorElementIndex(std::size_t gen) const { return lines_.size() + gen; }

  /// Position of a bus in buses(); throws NetworkError when absent.
  std::size_t busIndex(std::string_view bus) const;

  std::size_t odCount() const { return generators_.size() * loads_.size(); }
  std::vector<ODPair> odPairs() const;

  ReliabilityState initialState() const;
  Eigen::VectorXd costs() const;
  std::vector<std::string> elementIds() const;

  bool operator==(const Network& other) const;

 private:
  std::vector<std::string> buses_;
  std::vector<Generator> generators_;
  std::vector<Line> lines_;
  std::vector<Load> loads_;
  std::optional<double> budget_;
  std::unordered_map<std::string, std::size_t> busIndex_;
  std::unordered_map<std::string, std::size_t> elementIndex_;
};

/// Parses the JSON network document. Unknown keys are rejected.
Network parseNetwork(std::string_view text);

/// Serializes to the same JSON schema parseNetwork accepts, at full precision.
std::string serializeNetwork(const Network& network);

Network loadNetworkFile(const std::string& path);

/// The modified six-bus RBTS case: 2 generators, 7 lines, 4 loads.
Network rtbsFixture();

}  // namespace reliaforge
