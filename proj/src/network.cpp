#include "reliaforge/network.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include "json.hpp"

namespace reliaforge {

namespace {

using nlohmann::json;

void checkElement(const Element& e) {
  if (e.id.empty()) throw NetworkError("element id must be nonempty");
  if (!std::isfinite(e.reliability) || e.reliability < 0.0 || e.reliability > 1.0) {
    std::ostringstream msg;
    msg << "element '" << e.id << "': reliability " << e.reliability << " outside [0, 1]";
    throw NetworkError(msg.str());
  }
  if (!std::isfinite(e.cost) || e.cost <= 0.0) {
    std::ostringstream msg;
    msg << "element '" << e.id << "': cost " << e.cost << " must be positive";
    throw NetworkError(msg.str());
  }
}

void rejectUnknownKeys(const json& object, std::initializer_list<std::string_view> allowed,
                       const std::string& where) {
  if (!object.is_object()) throw NetworkError(where + ": expected an object");
  for (const auto& [key, value] : object.items()) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) throw NetworkError(where + ": unknown key '" + key + "'");
  }
}

const json& require(const json& object, const char* key, const std::string& where) {
  auto it = object.find(key);
  if (it == object.end()) throw NetworkError(where + ": missing key '" + key + "'");
  return *it;
}

std::string asString(const json& value, const std::string& where) {
  if (!value.is_string()) throw NetworkError(where + ": expected a string");
  return value.get<std::string>();
}

double asNumber(const json& value, const std::string& where) {
  if (!value.is_number()) throw NetworkError(where + ": expected a number");
  return value.get<double>();
}

const json& asArray(const json& value, const std::string& where) {
  if (!value.is_array()) throw NetworkError(where + ": expected an array");
  return value;
}

}  // namespace

Network::Network(std::vector<std::string> buses, std::vector<Generator> generators,
                 std::vector<Line> lines, std::vector<Load> loads, std::optional<double> budget)
    : buses_(std::move(buses)),
      generators_(std::move(generators)),
      lines_(std::move(lines)),
      loads_(std::move(loads)),
      budget_(budget) {
  for (std::size_t i = 0; i < buses_.size(); ++i) {
    if (buses_[i].empty()) throw NetworkError("bus id must be nonempty");
    if (!busIndex_.emplace(buses_[i], i).second)
      throw NetworkError("duplicate bus '" + buses_[i] + "'");
  }
  auto checkBus = [this](const std::string& bus, const std::string& owner) {
    if (!busIndex_.contains(bus))
      throw NetworkError("'" + owner + "' references unknown bus '" + bus + "'");
  };
  auto addElement = [this](const Element& e, std::size_t index) {
    checkElement(e);
    if (!elementIndex_.emplace(e.id, index).second)
      throw NetworkError("duplicate element id '" + e.id + "'");
  };

  for (std::size_t i = 0; i < lines_.size(); ++i) {
    const auto& line = lines_[i];
    if (line.element.kind != ElementKind::Line)
      throw NetworkError("element '" + line.element.id + "' listed as a line has generator kind");
    addElement(line.element, lineElementIndex(i));
    checkBus(line.from, line.element.id);
    checkBus(line.to, line.element.id);
    if (line.from == line.to)
      throw NetworkError("line '" + line.element.id + "' connects bus '" + line.from +
                         "' to itself");
  }
  for (std::size_t g = 0; g < generators_.size(); ++g) {
    const auto& gen = generators_[g];
    if (gen.element.kind != ElementKind::Generator)
      throw NetworkError("element '" + gen.element.id + "' listed as a generator has line kind");
    addElement(gen.element, generatorElementIndex(g));
    checkBus(gen.bus, gen.element.id);
  }
  std::set<std::string> loadIds;
  for (const auto& load : loads_) {
    if (load.id.empty()) throw NetworkError("load id must be nonempty");
    if (!loadIds.insert(load.id).second) throw NetworkError("duplicate load id '" + load.id + "'");
    checkBus(load.bus, load.id);
  }
  if (generators_.empty()) throw NetworkError("network needs at least one generator");
  if (loads_.empty()) throw NetworkError("network needs at least one load");
  if (budget_ && (!std::isfinite(*budget_) || *budget_ < 0.0))
    throw NetworkError("budget must be a nonnegative number");
}

const Element& Network::element(std::size_t index) const {
  if (index < lines_.size()) return lines_[index].element;
  return generators_.at(index - lines_.size()).element;
}

std::optional<std::size_t> Network::elementIndex(std::string_view id) const {
  auto it = elementIndex_.find(std::string(id));
  if (it == elementIndex_.end()) return std::nullopt;
  return it->second;
}

std::size_t Network::busIndex(std::string_view bus) const {
  auto it = busIndex_.find(std::string(bus));
  if (it == busIndex_.end()) throw NetworkError("unknown bus '" + std::string(bus) + "'");
  return it->second;
}

std::vector<ODPair> Network::odPairs() const {
  std::vector<ODPair> pairs;
  pairs.reserve(odCount());
  for (std::size_t g = 0; g < generators_.size(); ++g)
    for (std::size_t l = 0; l < loads_.size(); ++l) pairs.push_back({g, l});
  return pairs;
}

ReliabilityState Network::initialState() const {
  ReliabilityState r(static_cast<Eigen::Index>(elementCount()));
  for (std::size_t i = 0; i < elementCount(); ++i)
    r(static_cast<Eigen::Index>(i)) = element(i).reliability;
  return r;
}

Eigen::VectorXd Network::costs() const {
  Eigen::VectorXd c(static_cast<Eigen::Index>(elementCount()));
  for (std::size_t i = 0; i < elementCount(); ++i) c(static_cast<Eigen::Index>(i)) = element(i).cost;
  return c;
}

std::vector<std::string> Network::elementIds() const {
  std::vector<std::string> ids;
  ids.reserve(elementCount());
  for (std::size_t i = 0; i < elementCount(); ++i) ids.push_back(element(i).id);
  return ids;
}

bool Network::operator==(const Network& other) const {
  return buses_ == other.buses_ && generators_ == other.generators_ && lines_ == other.lines_ &&
         loads_ == other.loads_ && budget_ == other.budget_;
}

Network parseNetwork(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::ostringstream msg;
    msg << "syntax error at byte " << e.byte << ": " << e.what();
    throw NetworkError(msg.str());
  }
  rejectUnknownKeys(doc, {"buses", "generators", "lines", "loads", "budget"}, "network");

  std::vector<std::string> buses;
  for (const auto& b : asArray(require(doc, "buses", "network"), "buses"))
    buses.push_back(asString(b, "buses[]"));

  std::vector<Generator> generators;
  std::size_t i = 0;
  for (const auto& g : asArray(require(doc, "generators", "network"), "generators")) {
    const std::string where = "generators[" + std::to_string(i++) + "]";
    rejectUnknownKeys(g, {"id", "bus", "reliability", "cost"}, where);
    Generator gen;
    gen.element.id = asString(require(g, "id", where), where + ".id");
    gen.element.kind = ElementKind::Generator;
    gen.element.reliability = asNumber(require(g, "reliability", where), where + ".reliability");
    gen.element.cost = g.contains("cost") ? asNumber(g.at("cost"), where + ".cost")
                                          : kDefaultGeneratorCost;
    gen.bus = asString(require(g, "bus", where), where + ".bus");
    generators.push_back(std::move(gen));
  }

  std::vector<Line> lines;
  i = 0;
  for (const auto& l : asArray(require(doc, "lines", "network"), "lines")) {
    const std::string where = "lines[" + std::to_string(i++) + "]";
    rejectUnknownKeys(l, {"id", "from", "to", "reliability", "cost"}, where);
    Line line;
    line.element.id = asString(require(l, "id", where), where + ".id");
    line.element.kind = ElementKind::Line;
    line.element.reliability = asNumber(require(l, "reliability", where), where + ".reliability");
    line.element.cost =
        l.contains("cost") ? asNumber(l.at("cost"), where + ".cost") : kDefaultLineCost;
    line.from = asString(require(l, "from", where), where + ".from");
    line.to = asString(require(l, "to", where), where + ".to");
    lines.push_back(std::move(line));
  }

  std::vector<Load> loads;
  i = 0;
  for (const auto& l : asArray(require(doc, "loads", "network"), "loads")) {
    const std::string where = "loads[" + std::to_string(i++) + "]";
    rejectUnknownKeys(l, {"id", "bus"}, where);
    loads.push_back({asString(require(l, "id", where), where + ".id"),
                     asString(require(l, "bus", where), where + ".bus")});
  }

  std::optional<double> budget;
  if (doc.contains("budget")) budget = asNumber(doc.at("budget"), "budget");

  return Network(std::move(buses), std::move(generators), std::move(lines), std::move(loads),
                 budget);
}

std::string serializeNetwork(const Network& network) {
  json doc;
  doc["buses"] = network.buses();
  doc["generators"] = json::array();
  for (const auto& g : network.generators())
    doc["generators"].push_back({{"id", g.element.id},
                                 {"bus", g.bus},
                                 {"reliability", g.element.reliability},
                                 {"cost", g.element.cost}});
  doc["lines"] = json::array();
  for (const auto& l : network.lines())
    doc["lines"].push_back({{"id", l.element.id},
                            {"from", l.from},
                            {"to", l.to},
                            {"reliability", l.element.reliability},
                            {"cost", l.element.cost}});
  doc["loads"] = json::array();
  for (const auto& l : network.loads()) doc["loads"].push_back({{"id", l.id}, {"bus", l.bus}});
  if (network.budget()) doc["budget"] = *network.budget();
  return doc.dump(2) + "\n";
}

Network loadNetworkFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NetworkError("cannot read network file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parseNetwork(buffer.str());
}

Network rtbsFixture() {
  auto line = [](const char* id, const char* from, const char* to, double r) {
    return Line{{id, ElementKind::Line, r, kDefaultLineCost}, from, to};
  };
  auto gen = [](const char* id, const char* bus, double r) {
    return Generator{{id, ElementKind::Generator, r, kDefaultGeneratorCost}, bus};
  };
  // Topology recovered from the published path lists and path products.
  return Network({"1", "2", "3", "4", "5", "6"},
                 {gen("g1", "1", 0.91), gen("g2", "2", 0.85)},
                 {line("r1", "1", "3", 0.897), line("r2", "2", "4", 0.797),
                  line("r3", "1", "2", 0.805), line("r4", "3", "4", 0.909),
                  line("r5", "3", "5", 0.966), line("r6", "4", "5", 0.617),
                  line("r7", "5", "6", 0.9)},
                 {{"L1", "2"}, {"L2", "3"}, {"L3", "4"}, {"L4", "6"}}, 1.0);
}

}  // namespace reliaforge
