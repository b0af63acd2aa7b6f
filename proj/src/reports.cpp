#include "reliaforge/reports.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace reliaforge {

namespace {

std::string quoted(const std::string& text) {
  if (text.find_first_of(",\"\n\r") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string render(const Cell& cell) {
  if (const auto* text = std::get_if<std::string>(&cell)) return quoted(*text);
  return formatFixed(std::get<double>(cell));
}

std::string odLabel(const Network& network, ODPair od) {
  return network.generators()[od.generator].element.id + "-" + network.loads()[od.load].id;
}

std::vector<Cell> elementColumns(const Network& network, const Eigen::VectorXd& values) {
  std::vector<Cell> row;
  for (std::size_t i = 0; i < network.elementCount(); ++i)
    row.emplace_back(values(static_cast<Eigen::Index>(i)));
  return row;
}

void appendHeader(Table& table, const Network& network, const std::string& prefix) {
  for (const auto& id : network.elementIds()) table.header.push_back(prefix + id);
}

nlohmann::json perElement(const Network& network, const Eigen::VectorXd& values) {
  nlohmann::json out = nlohmann::json::object();
  for (std::size_t i = 0; i < network.elementCount(); ++i)
    out[network.element(i).id] = values(static_cast<Eigen::Index>(i));
  return out;
}

}  // namespace

std::string formatFixed(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  std::string s(buf);
  if (s == "-0.000000") s = "0.000000";
  return s;
}

std::size_t emitTableCSV(const Table& table, std::ostream& out) {
  std::size_t bytes = 0;
  auto writeRow = [&](const auto& cells, auto&& toText) {
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) line += ',';
      line += toText(cells[i]);
    }
    line += '\n';
    out << line;
    bytes += line.size();
  };
  writeRow(table.header, [](const std::string& h) { return quoted(h); });
  for (const auto& row : table.rows) {
    if (row.size() != table.header.size())
      throw ReportError("CSV row width " + std::to_string(row.size()) + " does not match header width " +
                        std::to_string(table.header.size()));
    writeRow(row, render);
  }
  if (!out) throw ReportError("failed writing CSV stream");
  return bytes;
}

std::size_t emitTableCSV(const Table& table, const std::filesystem::path& destination) {
  std::ofstream out(destination, std::ios::binary | std::ios::trunc);
  if (!out) throw ReportError("cannot write '" + destination.string() + "'");
  const auto bytes = emitTableCSV(table, out);
  out.close();
  if (!out) throw ReportError("failed writing '" + destination.string() + "'");
  return bytes;
}

Table pathsTable(const Network& network, const PathSet& paths) {
  Table t{{"odOrigin", "odDestination", "pathIndex", "busSequence", "elements"}, {}};
  for (const auto od : network.odPairs()) {
    std::size_t k = 0;
    for (const auto& p : paths[od]) {
      std::string buses, elems;
      for (auto b : p.buses) buses += (buses.empty() ? "" : "-") + network.buses()[b];
      for (auto e : p.elements) elems += (elems.empty() ? "" : ",") + network.element(e).id;
      t.rows.push_back({network.generators()[od.generator].element.id, network.loads()[od.load].id,
                        std::to_string(++k), buses, elems});
    }
  }
  return t;
}

Table pathReliabilityTable(const Network& network, const Evaluation& eval) {
  std::size_t width = 0;
  for (const auto& list : eval.pathReliabilities) width = std::max(width, list.size());
  Table t{{"generator", "load"}, {}};
  for (std::size_t k = 1; k <= width; ++k) t.header.push_back("p_" + std::to_string(k));
  for (const auto od : network.odPairs()) {
    std::vector<Cell> row{network.generators()[od.generator].element.id, network.loads()[od.load].id};
    const auto& list = eval.pathsOf(od);
    for (std::size_t k = 0; k < width; ++k)
      row.push_back(k < list.size() ? Cell{list[k]} : Cell{std::string()});
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table odReliabilityTable(const Network& network, const Evaluation& eval) {
  Table t{{"generator"}, {}};
  for (const auto& load : network.loads()) t.header.push_back(load.id);
  for (std::size_t g = 0; g < network.generators().size(); ++g) {
    std::vector<Cell> row{network.generators()[g].element.id};
    for (std::size_t l = 0; l < network.loads().size(); ++l)
      row.emplace_back(eval.odReliabilities(static_cast<Eigen::Index>(g), static_cast<Eigen::Index>(l)));
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table allocationElementsTable(const Network& network, const Allocation& allocation) {
  Table t{{"element", "initial", "increment", "resulting"}, {}};
  for (std::size_t i = 0; i < network.elementCount(); ++i) {
    const auto ix = static_cast<Eigen::Index>(i);
    t.rows.push_back({network.element(i).id, network.element(i).reliability,
                      allocation.increments(ix), allocation.resultingState(ix)});
  }
  return t;
}

nlohmann::json allocationSummary(const Network& network, const Allocation& allocation) {
  return {{"budget", allocation.budget},
          {"spent", allocation.spent},
          {"achievedIndex", allocation.achievedIndex},
          {"kktResidual", allocation.kktResidual},
          {"increments", perElement(network, allocation.increments)},
          {"reliabilities", perElement(network, allocation.resultingState)}};
}

Table sweepIndexTable(const std::vector<SweepPoint>& points) {
  Table t{{"budget", "spent", "systemIndex"}, {}};
  for (const auto& p : points)
    t.rows.push_back({p.budget, p.allocation.spent, p.allocation.achievedIndex});
  return t;
}

Table sweepOdTable(const Network& network, const PathSet& paths,
                   const std::vector<SweepPoint>& points) {
  Table t{{"budget"}, {}};
  const auto pairs = network.odPairs();
  for (const auto od : pairs) t.header.push_back(odLabel(network, od));
  for (const auto& p : points) {
    std::vector<Cell> row{p.budget};
    for (const auto od : pairs) row.emplace_back(odReliability(paths[od], p.allocation.resultingState));
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table sweepElementsTable(const Network& network, const std::vector<SweepPoint>& points) {
  Table t{{"budget"}, {}};
  appendHeader(t, network, "");
  for (const auto& p : points) {
    std::vector<Cell> row{p.budget};
    auto cols = elementColumns(network, p.allocation.resultingState);
    row.insert(row.end(), cols.begin(), cols.end());
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table gameIterationsTable(const Network& network, const GameRunResult& run) {
  Table t{{"t", "budget", "cumulativeBudget", "indexBefore", "indexAfter", "gameValue"}, {}};
  appendHeader(t, network, "r_before_");
  appendHeader(t, network, "damaged_");
  appendHeader(t, network, "y_");
  appendHeader(t, network, "psi_");
  appendHeader(t, network, "r_after_");
  double cumulative = 0.0;
  for (const auto& it : run.iterations) {
    cumulative += it.pumpedBudget;
    std::vector<Cell> row{std::to_string(it.index), it.pumpedBudget, cumulative,
                          it.systemIndexBefore, it.systemIndexAfter, it.solution.value};
    for (const auto* v : {&it.stateBefore, &it.damagedIndices, &it.utilities, &it.allocation,
                          &it.stateAfter}) {
      auto cols = elementColumns(network, *v);
      row.insert(row.end(), cols.begin(), cols.end());
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table gameCumulativeTable(const Network& network, const GameRunResult& run) {
  Table t{{"t", "cumulativeBudget", "systemIndex"}, {}};
  appendHeader(t, network, "gain_");
  double cumulative = 0.0;
  for (const auto& it : run.iterations) {
    cumulative += it.pumpedBudget;
    std::vector<Cell> row{std::to_string(it.index), cumulative, it.systemIndexAfter};
    auto cols = elementColumns(network, it.stateAfter - run.initialState);
    row.insert(row.end(), cols.begin(), cols.end());
    t.rows.push_back(std::move(row));
  }
  return t;
}

nlohmann::json gameSummary(const Network& network, const GameRunResult& run) {
  nlohmann::json iterations = nlohmann::json::array();
  for (const auto& it : run.iterations)
    iterations.push_back({{"t", it.index},
                          {"budget", it.pumpedBudget},
                          {"gameValue", it.solution.value},
                          {"systemIndex", it.systemIndexAfter}});
  return {{"totalSpent", run.totalSpent},
          {"initialIndex", run.initialIndex},
          {"finalIndex", run.finalIndex},
          {"stopReason", std::string(stopReasonName(run.reason))},
          {"iterations", iterations},
          {"reliabilities", perElement(network, run.finalState)}};
}

Table compareTable(const Network& network, const Allocation& traditional,
                   const GameRunResult& game) {
  Table t{{"element", "initial", "traditional", "game", "traditionalIncrement", "gameIncrement"},
          {}};
  for (std::size_t i = 0; i < network.elementCount(); ++i) {
    const auto ix = static_cast<Eigen::Index>(i);
    const double r0 = network.element(i).reliability;
    t.rows.push_back({network.element(i).id, r0, traditional.resultingState(ix),
                      game.finalState(ix), traditional.resultingState(ix) - r0,
                      game.finalState(ix) - r0});
  }
  return t;
}

}  // namespace reliaforge
