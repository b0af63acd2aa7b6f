#include "reliaforge/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "reliaforge/game.hpp"
#include "reliaforge/network.hpp"
#include "reliaforge/paths.hpp"
#include "reliaforge/reliability.hpp"
#include "reliaforge/reports.hpp"
#include "reliaforge/traditional.hpp"

namespace reliaforge {

namespace {

namespace fs = std::filesystem;

struct RunConfig {
  std::string networkPath;
  std::optional<double> budget;
  double target = 1.0;
  double from = 0.0;
  double to = 1.0;
  double step = 0.1;
  std::size_t maxPaths = kDefaultPathCap;
  std::optional<std::uint64_t> seed;
  SolverConfig solver;
  std::string outDir = ".";
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void writeJson(const nlohmann::json& doc, const fs::path& path) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw ReportError("cannot write '" + path.string() + "'");
  f << doc.dump(2) << '\n';
  if (!f) throw ReportError("failed writing '" + path.string() + "'");
}

struct Context {
  Network network;
  PathSet paths;
  fs::path out;
};

Context prepare(const RunConfig& cfg) {
  Network network = loadNetworkFile(cfg.networkPath);
  PathSet paths = enumeratePaths(network, cfg.maxPaths);
  fs::path out(cfg.outDir);
  fs::create_directories(out);
  return {std::move(network), std::move(paths), out};
}

double resolveBudget(const RunConfig& cfg, const Network& network) {
  if (cfg.budget) return *cfg.budget;
  if (network.budget()) return *network.budget();
  throw UsageError("no --budget given and the network file has no budget");
}

SolverConfig resolveSolver(const RunConfig& cfg) {
  SolverConfig s = cfg.solver;
  if (cfg.seed) {
    s.seed = *cfg.seed;
  } else if (const char* env = std::getenv("RELIAFORGE_SEED")) {
    try {
      std::size_t used = 0;
      s.seed = std::stoull(env, &used);
      if (used != std::string(env).size()) throw std::invalid_argument(env);
    } catch (const std::exception&) {
      throw UsageError(std::string("RELIAFORGE_SEED is not an unsigned integer: ") + env);
    }
  }
  return s;
}

void cmdPaths(const RunConfig& cfg, std::ostream& out) {
  auto ctx = prepare(cfg);
  const auto table = pathsTable(ctx.network, ctx.paths);
  emitTableCSV(table, ctx.out / "paths.csv");
  emitTableCSV(table, out);
}

void cmdEvaluate(const RunConfig& cfg, std::ostream& out) {
  auto ctx = prepare(cfg);
  const auto eval = systemReliability(ctx.network, ctx.paths, ctx.network.initialState());
  emitTableCSV(pathReliabilityTable(ctx.network, eval), ctx.out / "path_reliability.csv");
  emitTableCSV(odReliabilityTable(ctx.network, eval), ctx.out / "od_reliability.csv");
  out << formatFixed(eval.systemIndex) << '\n';
}

void cmdTraditional(const RunConfig& cfg, std::ostream& out) {
  auto ctx = prepare(cfg);
  const double budget = resolveBudget(cfg, ctx.network);
  const auto alloc = allocateTraditional(ctx.network, ctx.paths, budget, cfg.solver);
  const auto summary = allocationSummary(ctx.network, alloc);
  writeJson(summary, ctx.out / "traditional_allocation.json");
  emitTableCSV(allocationElementsTable(ctx.network, alloc), ctx.out / "traditional_elements.csv");
  out << summary.dump(2) << '\n';
}

void cmdSweep(const RunConfig& cfg, std::ostream& out) {
  auto ctx = prepare(cfg);
  const auto points = sweepBudget(ctx.network, ctx.paths, cfg.from, cfg.to, cfg.step, cfg.solver);
  const auto index = sweepIndexTable(points);
  emitTableCSV(index, ctx.out / "sweep_index.csv");
  emitTableCSV(sweepOdTable(ctx.network, ctx.paths, points), ctx.out / "sweep_od.csv");
  emitTableCSV(sweepElementsTable(ctx.network, points), ctx.out / "sweep_elements.csv");
  emitTableCSV(index, out);
}

void cmdGame(const RunConfig& cfg, std::ostream& out) {
  auto ctx = prepare(cfg);
  const double budget = resolveBudget(cfg, ctx.network);
  const auto run = runGameAllocation(ctx.network, ctx.paths, budget, cfg.target);
  emitTableCSV(gameIterationsTable(ctx.network, run), ctx.out / "game_iterations.csv");
  emitTableCSV(gameCumulativeTable(ctx.network, run), ctx.out / "game_cumulative.csv");
  const auto summary = gameSummary(ctx.network, run);
  writeJson(summary, ctx.out / "game_summary.json");
  out << summary.dump(2) << '\n';
}

void cmdCompare(const RunConfig& cfg, std::ostream& out) {
  auto ctx = prepare(cfg);
  const double budget = resolveBudget(cfg, ctx.network);
  const auto alloc = allocateTraditional(ctx.network, ctx.paths, budget, cfg.solver);
  const auto run = runGameAllocation(ctx.network, ctx.paths, budget, cfg.target);
  const auto table = compareTable(ctx.network, alloc, run);
  emitTableCSV(table, ctx.out / "compare.csv");
  const nlohmann::json summary = {
      {"budget", budget},
      {"traditional", allocationSummary(ctx.network, alloc)},
      {"game", gameSummary(ctx.network, run)}};
  writeJson(summary, ctx.out / "compare.json");
  emitTableCSV(table, out);
}

}  // namespace

int runCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Budget allocation for network reliability improvement", "reliaforge"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto addNetwork = [&](CLI::App* sub) {
    sub->add_option("--network", cfg.networkPath, "Network JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out", cfg.outDir, "Directory for output files")->capture_default_str();
    sub->add_option("--max-paths", cfg.maxPaths, "Path cap per OD pair")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
  };
  auto addBudget = [&](CLI::App* sub) {
    sub->add_option("--budget", cfg.budget, "Total improvement budget (defaults to the file's)")
        ->check(CLI::NonNegativeNumber);
  };
  auto addTarget = [&](CLI::App* sub) {
    sub->add_option("--target", cfg.target, "Target system index")
        ->capture_default_str()
        ->check(CLI::Range(0.0, 1.0));
  };
  auto addSolver = [&](CLI::App* sub) {
    sub->add_option("--starts", cfg.solver.numStarts, "Multi-start count")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "Random seed (env RELIAFORGE_SEED when absent)");
  };

  auto* paths = app.add_subcommand("paths", "Enumerate generator-to-load paths as CSV");
  addNetwork(paths);
  auto* evaluate = app.add_subcommand("evaluate", "Path, OD and system reliability");
  addNetwork(evaluate);
  auto* traditional =
      app.add_subcommand("allocate-traditional", "Nonlinear budget allocation for one budget");
  addNetwork(traditional);
  addBudget(traditional);
  addSolver(traditional);
  auto* sweep = app.add_subcommand("sweep", "Traditional allocation over a budget range");
  addNetwork(sweep);
  addSolver(sweep);
  sweep->add_option("--from", cfg.from, "First budget")->capture_default_str()->check(CLI::NonNegativeNumber);
  sweep->add_option("--to", cfg.to, "Last budget")->capture_default_str()->check(CLI::NonNegativeNumber);
  sweep->add_option("--step", cfg.step, "Budget increment")->capture_default_str()->check(CLI::PositiveNumber);
  auto* game = app.add_subcommand("allocate-game", "Iterative zero-sum game allocation");
  addNetwork(game);
  addBudget(game);
  addTarget(game);
  auto* compare = app.add_subcommand("compare", "Run both allocators side by side");
  addNetwork(compare);
  addBudget(compare);
  addTarget(compare);
  addSolver(compare);

  if (argc <= 1) {
    err << app.help();
    return kExitUsage;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  if (sweep->parsed() && cfg.to < cfg.from) {
    err << "sweep: --to must not be below --from\n";
    return kExitUsage;
  }

  try {
    if (traditional->parsed() || sweep->parsed() || compare->parsed()) cfg.solver = resolveSolver(cfg);
    if (paths->parsed()) cmdPaths(cfg, out);
    else if (evaluate->parsed()) cmdEvaluate(cfg, out);
    else if (traditional->parsed()) cmdTraditional(cfg, out);
    else if (sweep->parsed()) cmdSweep(cfg, out);
    else if (game->parsed()) cmdGame(cfg, out);
    else if (compare->parsed()) cmdCompare(cfg, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitComputation;
  }
  return kExitOk;
}

}  // namespace reliaforge
