#include <random>
#include <set>

#include "doctest.h"
#include "reliaforge/paths.hpp"
#include "support.hpp"

using namespace reliaforge;

namespace {

std::vector<int> busNumbers(const Network& net, const Path& p) {
  std::vector<int> out;
  for (auto b : p.buses) out.push_back(std::stoi(net.buses()[b]));
  return out;
}

}  // namespace

TEST_CASE("rtbs path sets equal the published lists") {
  const auto net = rtbsFixture();
  const auto paths = enumeratePaths(net);
  for (const auto& od : testing::publishedRtbs()) {
    CAPTURE(od.generator);
    CAPTURE(od.load);
    const ODPair pair{*net.elementIndex(od.generator) - net.lines().size(),
                      static_cast<std::size_t>(od.load[1] - '1')};
    std::set<std::vector<int>> got, want(od.busSequences.begin(), od.busSequences.end());
    for (const auto& p : paths[pair]) got.insert(busNumbers(net, p));
    CHECK(got == want);
    CHECK(paths[pair].size() == od.busSequences.size());
  }
}

TEST_CASE("g1 to L4 includes the 1-3-5-6 path through g1 r1 r5 r7") {
  const auto net = rtbsFixture();
  const auto paths = enumeratePaths(net);
  bool found = false;
  for (const auto& p : paths[{0, 3}]) {
    if (busNumbers(net, p) != std::vector<int>{1, 3, 5, 6}) continue;
    found = true;
    std::vector<std::string> ids;
    for (auto e : p.elements) ids.push_back(net.element(e).id);
    CHECK(ids == std::vector<std::string>{"g1", "r1", "r5", "r7"});
  }
  CHECK(found);
}

TEST_CASE("co-located load gives a generator-only path") {
  const auto net = rtbsFixture();
  const auto paths = enumeratePaths(net);
  const auto& list = paths[{1, 0}];
  REQUIRE(list.size() == 1);
  CHECK(list[0].elements == std::vector<std::size_t>{*net.elementIndex("g2")});
  CHECK(list[0].buses.size() == 1);
}

TEST_CASE("path counts") {
  SUBCASE("rtbs") {
    Eigen::MatrixXi want(2, 4);
    want << 3, 3, 3, 4, 1, 3, 3, 4;
    CHECK(pathCount(enumeratePaths(rtbsFixture())) == want);
  }
  SUBCASE("single edge") {
    Network net({"a", "b"}, {{{"g", ElementKind::Generator, 0.9, 2}, "a"}},
                {{{"l", ElementKind::Line, 0.5, 1}, "a", "b"}}, {{"L", "b"}});
    CHECK(pathCount(enumeratePaths(net))(0, 0) == 1);
  }
  SUBCASE("disconnected") {
    Network net({"a", "b", "c"}, {{{"g", ElementKind::Generator, 0.9, 2}, "a"}},
                {{{"l", ElementKind::Line, 0.5, 1}, "a", "b"}}, {{"L", "c"}});
    CHECK(pathCount(enumeratePaths(net))(0, 0) == 0);
  }
}

TEST_CASE("parallel lines give distinct paths") {
  Network net({"a", "b"}, {{{"g", ElementKind::Generator, 0.9, 2}, "a"}},
              {{{"l1", ElementKind::Line, 0.5, 1}, "a", "b"},
               {{"l2", ElementKind::Line, 0.6, 1}, "b", "a"}},
              {{"L", "b"}});
  const auto paths = enumeratePaths(net);
  const auto& list = paths[{0, 0}];
  REQUIRE(list.size() == 2);
  CHECK(list[0].elements[1] != list[1].elements[1]);
}

TEST_CASE("path cap aborts enumeration") {
  CHECK_THROWS_AS(enumeratePaths(rtbsFixture(), 3), PathLimitExceeded);
  CHECK_NOTHROW(enumeratePaths(rtbsFixture(), 4));
}

TEST_CASE("enumeration matches brute force on random small networks") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 150; ++trial) {
    const auto net = testing::randomNetwork(rng, 8);
    const auto paths = enumeratePaths(net);
    for (const auto od : net.odPairs()) {
      std::set<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> got;
      for (const auto& p : paths[od]) {
        CHECK(p.od == od);
        CHECK(p.elements.size() == p.buses.size());
        got.insert({p.buses, p.elements});
      }
      CHECK(got.size() == paths[od].size());
      CHECK(got == testing::bruteForcePaths(net, od));
    }
  }
}

TEST_CASE("path invariants and deterministic order") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const auto net = testing::randomNetwork(rng, 7, /*allowParallel=*/false);
    const auto a = enumeratePaths(net);
    CHECK(a == enumeratePaths(net));
    for (const auto od : net.odPairs()) {
      const auto& list = a[od];
      for (std::size_t k = 0; k < list.size(); ++k) {
        const auto& p = list[k];
        std::set<std::size_t> unique(p.buses.begin(), p.buses.end());
        CHECK(unique.size() == p.buses.size());
        CHECK(p.elements[0] == net.generatorElementIndex(od.generator));
        CHECK(p.buses.front() == net.busIndex(net.generators()[od.generator].bus));
        CHECK(p.buses.back() == net.busIndex(net.loads()[od.load].bus));
        for (std::size_t j = 1; j < p.elements.size(); ++j) {
          const auto& line = net.lines()[p.elements[j]];
          const auto x = net.busIndex(line.from), y = net.busIndex(line.to);
          CHECK(((x == p.buses[j - 1] && y == p.buses[j]) || (y == p.buses[j - 1] && x == p.buses[j])));
        }
        if (k > 0) CHECK(list[k - 1].buses < p.buses);
      }
    }
  }
}
