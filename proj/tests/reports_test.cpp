#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "reliaforge/reports.hpp"

using namespace reliaforge;

TEST_CASE("fixed six-decimal rendering") {
  CHECK(formatFixed(0.9166666666) == "0.916667");
  CHECK(formatFixed(1.0) == "1.000000");
  CHECK(formatFixed(-1e-12) == "0.000000");
}

TEST_CASE("csv emission") {
  SUBCASE("header only") {
    std::ostringstream out;
    const auto n = emitTableCSV(Table{{"a", "b"}, {}}, out);
    CHECK(out.str() == "a,b\n");
    CHECK(n == 4);
  }
  SUBCASE("quoting and numbers") {
    std::ostringstream out;
    emitTableCSV(Table{{"x", "y"}, {{std::string("g1,r1"), 0.5}, {std::string("say \"hi\""), 2.0}}}, out);
    CHECK(out.str() == "x,y\n\"g1,r1\",0.500000\n\"say \"\"hi\"\"\",2.000000\n");
  }
  SUBCASE("ragged rows rejected") {
    std::ostringstream out;
    CHECK_THROWS_AS(emitTableCSV(Table{{"x"}, {{1.0, 2.0}}}, out), ReportError);
  }
  SUBCASE("unwritable destination") {
    CHECK_THROWS_AS(emitTableCSV(Table{{"x"}, {}}, std::filesystem::path("/nonexistent/dir/x.csv")),
                    ReportError);
  }
}

TEST_CASE("od table mirrors the generator by load layout") {
  const auto net = rtbsFixture();
  const auto paths = enumeratePaths(net);
  const auto eval = systemReliability(net, paths, net.initialState());
  const auto t = odReliabilityTable(net, eval);
  CHECK(t.header == std::vector<std::string>{"generator", "L1", "L2", "L3", "L4"});
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[0].size() == 5);
  std::ostringstream out;
  emitTableCSV(t, out);
  CHECK(out.str().rfind("generator,L1,L2,L3,L4\ng1,0.93", 0) == 0);
}

TEST_CASE("path table layout") {
  const auto net = rtbsFixture();
  const auto paths = enumeratePaths(net);
  const auto t = pathsTable(net, paths);
  CHECK(t.rows.size() == paths.totalPaths());
  std::ostringstream out;
  emitTableCSV(t, out);
  CHECK(out.str().find("g1,L4,4,1-3-5-6,\"g1,r1,r5,r7\"\n") != std::string::npos);
  CHECK(out.str().find("g2,L1,1,2,g2\n") != std::string::npos);

  const auto eval = systemReliability(net, paths, net.initialState());
  const auto pr = pathReliabilityTable(net, eval);
  CHECK(pr.header.size() == 6);
  CHECK(std::get<std::string>(pr.rows[4][3]).empty());
}
