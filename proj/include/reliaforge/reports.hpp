#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "reliaforge/game.hpp"
#include "reliaforge/network.hpp"
#include "reliaforge/paths.hpp"
#include "reliaforge/reliability.hpp"
#include "reliaforge/traditional.hpp"

namespace reliaforge {

/// Text cells are written verbatim (quoted when needed); numbers are fixed
/// point with six decimals. An empty string is an empty cell.
using Cell = std::variant<std::string, double>;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

class ReportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string formatFixed(double value);

/// RFC 4180 style with LF line endings, header first. Returns bytes written.
std::size_t emitTableCSV(const Table& table, std::ostream& out);
std::size_t emitTableCSV(const Table& table, const std::filesystem::path& destination);

Table pathsTable(const Network& network, const PathSet& paths);
/// One row per OD pair with p_1..p_k columns; pairs with fewer paths leave cells empty.
Table pathReliabilityTable(const Network& network, const Evaluation& eval);
/// Generators down, loads across.
Table odReliabilityTable(const Network& network, const Evaluation& eval);

Table allocationElementsTable(const Network& network, const Allocation& allocation);
nlohmann::json allocationSummary(const Network& network, const Allocation& allocation);

Table sweepIndexTable(const std::vector<SweepPoint>& points);
Table sweepOdTable(const Network& network, const PathSet& paths,
                   const std::vector<SweepPoint>& points);
Table sweepElementsTable(const Network& network, const std::vector<SweepPoint>& points);

/// One wide row per iteration: budget, then r_before, damaged index, utility,
/// strategy weight and r_after for each element.
Table gameIterationsTable(const Network& network, const GameRunResult& run);
/// Cumulative budget and per-element improvement over the initial state.
Table gameCumulativeTable(const Network& network, const GameRunResult& run);
nlohmann::json gameSummary(const Network& network, const GameRunResult& run);

/// Per-element final reliabilities under both allocators.
Table compareTable(const Network& network, const Allocation& traditional,
                   const GameRunResult& game);

}  // namespace reliaforge
