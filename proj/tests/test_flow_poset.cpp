#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <set>

#include "morseq/errors.hpp"
#include "morseq/flow_poset.hpp"
#include "morseq/json_io.hpp"
#include "morseq/toric.hpp"
#include "support.hpp"

using namespace morseq;

namespace {

FlowDigraph graph(std::vector<std::string> v, std::vector<std::pair<std::string, std::string>> e) {
  return FlowDigraph{std::move(v), std::move(e)};
}

bool is_cycle_of(const FlowDigraph& g, const std::vector<std::string>& cyc) {
  if (cyc.empty()) return false;
  std::set<std::pair<std::string, std::string>> edges(g.edges.begin(), g.edges.end());
  for (std::size_t i = 0; i < cyc.size(); ++i) {
    if (!edges.count({cyc[i], cyc[(i + 1) % cyc.size()]})) return false;
  }
  return std::set<std::string>(cyc.begin(), cyc.end()).size() == cyc.size();
}

// Longest path ending at each vertex, by memoized recursion on predecessors.
std::map<std::string, std::size_t> longest_paths(const FlowDigraph& g) {
  std::map<std::string, std::vector<std::string>> preds;
  for (const auto& [a, b] : g.edges) preds[b].push_back(a);
  std::map<std::string, std::size_t> memo;
  std::function<std::size_t(const std::string&)> depth = [&](const std::string& x) -> std::size_t {
    if (auto it = memo.find(x); it != memo.end()) return it->second;
    std::size_t d = 0;
    for (const auto& p : preds[x]) d = std::max(d, depth(p) + 1);
    return memo[x] = d;
  };
  for (const auto& x : g.vertices) depth(x);
  return memo;
}

FlowDigraph random_dag(std::mt19937& rng, int n, double p) {
  FlowDigraph g;
  for (int i = 0; i < n; ++i) g.vertices.push_back("v" + std::to_string(i));
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::bernoulli_distribution coin(p);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (coin(rng)) g.edges.push_back({g.vertices[perm[i]], g.vertices[perm[j]]});
    }
  }
  return g;
}

}  // namespace

TEST(Quasicycle, ThreeCycle) {
  const auto g = graph({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"c", "a"}});
  const auto cyc = detect_quasicycle(g);
  ASSERT_TRUE(cyc.has_value());
  EXPECT_EQ(cyc->size(), 3u);
  EXPECT_TRUE(is_cycle_of(g, *cyc));
  EXPECT_THROW(build_filtration(g), NotFilterable);
}

TEST(Quasicycle, ProjectivePlaneIsAcyclic) {
  const auto g = graph({"p0", "p1", "p2"}, {{"p2", "p1"}, {"p1", "p0"}, {"p2", "p0"}});
  EXPECT_FALSE(detect_quasicycle(g).has_value());
  const auto f = build_filtration(g);
  EXPECT_EQ(f.layers, (std::vector<std::vector<std::string>>{{"p2"}, {"p1"}, {"p0"}}));
  EXPECT_EQ(f.length(), 2u);
}

TEST(Quasicycle, SixCycleAmongTwentyTwoPoints) {
  const auto g = io::digraph_from_json(io::read_json_file(MORSEQ_DATA_DIR "/quasicycle22.json"));
  ASSERT_EQ(g.vertices.size(), 22u);
  const auto cyc = detect_quasicycle(g);
  ASSERT_TRUE(cyc.has_value());
  EXPECT_EQ(cyc->size(), 6u);
  EXPECT_TRUE(is_cycle_of(g, *cyc));
  EXPECT_THROW(build_filtration(g), NotFilterable);
}

TEST(Filtration, Diamond) {
  const auto g = graph({"a", "b", "c", "d"}, {{"a", "b"}, {"a", "c"}, {"b", "d"}, {"c", "d"}});
  const auto f = build_filtration(g);
  EXPECT_EQ(f.layers, (std::vector<std::vector<std::string>>{{"a"}, {"b", "c"}, {"d"}}));
  EXPECT_TRUE(is_valid_filtration(g, f));
}

TEST(Filtration, IsolatedVerticesAtLayerZero) {
  const auto g = graph({"x", "a", "b"}, {{"a", "b"}});
  const auto f = build_filtration(g);
  EXPECT_EQ(f.layer_of("x"), 0u);
  EXPECT_EQ(f.layer_of("b"), 1u);
}

TEST(Filtration, InvalidLayeringsRejected) {
  const auto g = graph({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
  EXPECT_FALSE(is_valid_filtration(g, Filtration{{{"a", "b"}, {"c"}}}));
  EXPECT_FALSE(is_valid_filtration(g, Filtration{{{"a"}, {"b"}}}));
  EXPECT_FALSE(is_valid_filtration(g, Filtration{{{"c"}, {"b"}, {"a"}}}));
  EXPECT_TRUE(is_valid_filtration(g, Filtration{{{"a"}, {"b"}, {"c"}}}));
}

TEST(Digraph, ValidationErrors) {
  EXPECT_THROW(graph({"a", "a"}, {}).validate(), InvalidInput);
  EXPECT_THROW(graph({"a"}, {{"a", "b"}}).validate(), InvalidInput);
}

TEST(Filtration, RandomDagsGetLongestPathLayers) {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    const auto g = random_dag(rng, 3 + trial % 12, 0.3);
    ASSERT_FALSE(detect_quasicycle(g).has_value());
    const auto f = build_filtration(g);
    EXPECT_TRUE(is_valid_filtration(g, f));
    EXPECT_EQ(f.layer_map(), longest_paths(g));
  }
}

TEST(Filtration, ReversalPreservesFilterability) {
  std::mt19937 rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    auto g = random_dag(rng, 8, 0.35);
    const auto rg = g.reversed();
    const auto f = build_filtration(g);
    const auto rf = build_filtration(rg);
    EXPECT_EQ(f.length(), rf.length());
    EXPECT_TRUE(is_valid_filtration(rg, rf));
    // reversing the layer order of g's filtration is admissible for rg
    Filtration flipped{std::vector<std::vector<std::string>>(f.layers.rbegin(), f.layers.rend())};
    EXPECT_TRUE(is_valid_filtration(rg, flipped));
    if (!g.edges.empty()) {
      // closing a path into a loop creates a quasicycle in both directions
      const auto [a, b] = g.edges.front();
      g.edges.push_back({b, a});
      EXPECT_TRUE(detect_quasicycle(g).has_value());
      EXPECT_TRUE(detect_quasicycle(g.reversed()).has_value());
    }
  }
}

TEST(Filtration, ToricFlowDigraphsAreFilterable) {
  std::mt19937 rng(8);
  for (const auto& fan : {morseq::testing::p2_fan(), morseq::testing::p1xp1_fan(), morseq::testing::f1_fan()}) {
    const auto ds = dataset_from_fan(fan);
    for (const auto& v : morseq::testing::random_chambers(ds, rng, 6, 7)) {
      const auto g = flow_digraph_from_fan(fan, v);
      ASSERT_FALSE(detect_quasicycle(g).has_value());
      const auto f = build_filtration(g);
      EXPECT_TRUE(is_valid_filtration(g, f));
      EXPECT_EQ(f.length(), 2u);
    }
  }
}
