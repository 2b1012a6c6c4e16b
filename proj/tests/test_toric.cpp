#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "morseq/errors.hpp"
#include "morseq/fixed_point.hpp"
#include "morseq/toric.hpp"
#include "support.hpp"

using namespace morseq;
using morseq::testing::chr;

namespace {

std::vector<Weight> sorted(std::vector<Weight> ws) {
  std::sort(ws.begin(), ws.end());
  return ws;
}

using Edge = std::pair<std::string, std::string>;

std::vector<Edge> sorted_edges(std::vector<Edge> e) {
  std::sort(e.begin(), e.end());
  return e;
}

// Brute force over a box: x, y with the polytope inequalities <m, ray_i> >= -a_i.
FiniteCharacter polytope_points(const Fan& f, const ToricDivisor& d, const CoordinateBox& box) {
  FiniteCharacter out(f.rank());
  box.for_each([&](const Weight& m) {
    bool in = true;
    for (std::size_t i = 0; i < f.rays.size(); ++i) in = in && pairing(m, f.rays[i]) >= -d.coeffs[i];
    if (in) out.add_term(m, 1);
  });
  return out;
}

}  // namespace

TEST(ToricDataset, ProjectivePlaneWeightsAndFibers) {
  for (std::int64_t c : {-2, 0, 1, 3}) {
    const auto ds = dataset_from_fan(morseq::testing::p2_fan(), morseq::testing::p2_divisor(c));
    ASSERT_EQ(ds.points.size(), 3u);
    EXPECT_TRUE(ds.compact);
    EXPECT_EQ(ds.ambient_dim, 2u);
    EXPECT_EQ(sorted(ds.point("p0").isotropy_weights), sorted({Weight{-1, 0}, Weight{0, -1}}));
    EXPECT_EQ(sorted(ds.point("p1").isotropy_weights), sorted({Weight{1, 0}, Weight{1, -1}}));
    EXPECT_EQ(sorted(ds.point("p2").isotropy_weights), sorted({Weight{0, 1}, Weight{-1, 1}}));
    EXPECT_EQ(ds.point("p0").fiber, FiniteCharacter::monomial(Weight{0, 0}));
    EXPECT_EQ(ds.point("p1").fiber, FiniteCharacter::monomial(Weight{c, 0}));
    EXPECT_EQ(ds.point("p2").fiber, FiniteCharacter::monomial(Weight{0, c}));
  }
}

TEST(ToricDataset, ProjectiveLineAndComplexLine) {
  const auto p1 = dataset_from_fan(morseq::testing::p1_fan(), ToricDivisor{{0, 3}});
  EXPECT_EQ(p1.point("p0").isotropy_weights, std::vector<Weight>{Weight{-1}});
  EXPECT_EQ(p1.point("p1").isotropy_weights, std::vector<Weight>{Weight{1}});
  EXPECT_EQ(p1.point("p0").fiber, FiniteCharacter::monomial(Weight{0}));
  EXPECT_EQ(p1.point("p1").fiber, FiniteCharacter::monomial(Weight{3}));

  const auto line = dataset_from_fan(morseq::testing::line_fan());
  ASSERT_EQ(line.points.size(), 1u);
  EXPECT_FALSE(line.compact);
  EXPECT_EQ(line.points[0].isotropy_weights, std::vector<Weight>{Weight{-1}});
}

TEST(ToricDataset, TrivialDivisorGivesTrivialFibers) {
  for (const auto& fan : {morseq::testing::p2_fan(), morseq::testing::p1xp1_fan(), morseq::testing::f1_fan()}) {
    const auto ds = dataset_from_fan(fan, ToricDivisor{std::vector<std::int64_t>(fan.rays.size(), 0)});
    for (const auto& x : ds.points) EXPECT_EQ(x.fiber, FiniteCharacter::one(2));
  }
}

TEST(ToricDataset, FiberSolvesPairingEquations) {
  for (const auto& fan : {morseq::testing::p2_fan(), morseq::testing::p1xp1_fan(), morseq::testing::f1_fan()}) {
    for (const auto& d : morseq::testing::surface_divisors(fan)) {
      const auto u = divisor_fiber_weights(fan, d);
      ASSERT_EQ(u.size(), fan.max_cones.size());
      for (std::size_t s = 0; s < u.size(); ++s) {
        for (auto i : fan.max_cones[s]) EXPECT_EQ(pairing(u[s], fan.rays[i]), -d.coeffs[i]);
      }
    }
  }
}

TEST(Fan, ValidationErrors) {
  auto bad = morseq::testing::p2_fan();
  bad.rays[2] = {-2, -2};
  EXPECT_THROW(bad.validate(), InvalidInput);
  auto singular = morseq::testing::p1xp1_fan();
  singular.rays[1] = {1, 2};
  EXPECT_THROW(singular.validate(), InvalidInput);
  auto shape = morseq::testing::p2_fan();
  shape.max_cones[0] = {0};
  EXPECT_THROW(shape.validate(), InvalidInput);
  EXPECT_NO_THROW(morseq::testing::f1_fan().validate());
  EXPECT_TRUE(is_complete(morseq::testing::f1_fan()));
  EXPECT_FALSE(is_complete(morseq::testing::line_fan()));
}

TEST(FlowDigraph, ProjectivePlane) {
  const auto g = flow_digraph_from_fan(morseq::testing::p2_fan(), ChamberVector{{1, 2}});
  EXPECT_EQ(sorted_edges(g.edges), sorted_edges({{"p2", "p1"}, {"p2", "p0"}, {"p1", "p0"}}));
}

TEST(FlowDigraph, ProjectiveLine) {
  const auto g = flow_digraph_from_fan(morseq::testing::p1_fan(), ChamberVector{{1}});
  EXPECT_EQ(g.edges, (std::vector<Edge>{{"p1", "p0"}}));
}

TEST(FlowDigraph, ProductOfLinesHasUniqueSourceAndSink) {
  const auto g = flow_digraph_from_fan(morseq::testing::p1xp1_fan(), ChamberVector{{1, 2}});
  EXPECT_EQ(g.edges.size(), 4u);
  std::map<std::string, int> in, out;
  for (const auto& [a, b] : g.edges) {
    ++out[a];
    ++in[b];
  }
  int sources = 0, sinks = 0;
  for (const auto& v : g.vertices) {
    sources += in[v] == 0;
    sinks += out[v] == 0;
  }
  EXPECT_EQ(sources, 1);
  EXPECT_EQ(sinks, 1);
  EXPECT_EQ(in["p0"], 2);  // the sink is the first quadrant
}

TEST(FlowDigraph, OppositeChamberReversesEdges) {
  std::mt19937 rng(6);
  for (const auto& fan : {morseq::testing::p2_fan(), morseq::testing::p1xp1_fan(), morseq::testing::f1_fan()}) {
    for (const auto& v : morseq::testing::random_chambers(dataset_from_fan(fan), rng, 6, 5)) {
      EXPECT_EQ(sorted_edges(flow_digraph_from_fan(fan, -v).edges),
                sorted_edges(flow_digraph_from_fan(fan, v).reversed().edges));
    }
  }
}

TEST(FlowDigraph, SinkIsLimitOfOpenOrbit) {
  std::mt19937 rng(2);
  for (const auto& fan : {morseq::testing::p2_fan(), morseq::testing::p1xp1_fan(), morseq::testing::f1_fan()}) {
    const auto ds = dataset_from_fan(fan);
    for (const auto& v : morseq::testing::random_chambers(ds, rng, 6, 5)) {
      const auto g = flow_digraph_from_fan(fan, v);
      const auto lim = bb_limit_cone(fan, {}, v);
      ASSERT_TRUE(lim.has_value());
      for (const auto& [a, b] : g.edges) EXPECT_NE(a, Fan::point_id(*lim));
      // the sink point has every isotropy weight negative on v
      EXPECT_EQ(polarize_record(ds.point(Fan::point_id(*lim)), v).nu_plus, 0u);
    }
  }
}

TEST(NuMultiset, ChamberIndependentOnSurfaces) {
  std::mt19937 rng(41);
  for (const auto& fan : {morseq::testing::p2_fan(), morseq::testing::p1xp1_fan(), morseq::testing::f1_fan()}) {
    const auto ds = dataset_from_fan(fan);
    std::vector<std::size_t> first;
    for (const auto& v : morseq::testing::random_chambers(ds, rng, 8, 9)) {
      std::vector<std::size_t> nus;
      for (const auto& x : ds.points) nus.push_back(polarize_record(x, v).nu_plus);
      std::sort(nus.begin(), nus.end());
      if (first.empty()) first = nus;
      EXPECT_EQ(nus, first);
    }
  }
}

TEST(Sections, ProjectivePlaneCharts) {
  const auto fan = morseq::testing::p2_fan();
  const std::int64_t c = 2;
  const auto d = morseq::testing::p2_divisor(c);
  const auto box = CoordinateBox::cube(2, -4, 4);
  FiniteCharacter quadrant(2), all(2), chart2(2);
  box.for_each([&](const Weight& w) {
    all.add_term(w, 1);
    if (w[0] >= 0 && w[1] >= 0) quadrant.add_term(w, 1);
    if (w[0] >= 0 && w[0] + w[1] <= c) chart2.add_term(w, 1);
  });
  EXPECT_EQ(chart_sections_in_box(fan, d, {0}, box), quadrant);
  EXPECT_EQ(chart_sections_in_box(fan, d, {0, 1, 2}, box), all);
  EXPECT_EQ(chart_sections_in_box(fan, d, {2}, box), chart2);
  EXPECT_EQ(common_rays(fan, {0, 2}), std::vector<std::size_t>{0});
  EXPECT_TRUE(common_rays(fan, {0, 1, 2}).empty());
  EXPECT_THROW(chart_sections_in_box(fan, d, {3}, box), InvalidInput);
}

TEST(Oracle, ProjectivePlane) {
  const auto fan = morseq::testing::p2_fan();
  const auto box = CoordinateBox::cube(2, -6, 6);
  EXPECT_EQ(polytope_character_oracle(fan, morseq::testing::p2_divisor(1), box),
            chr(2, {{Weight{0, 0}, 1}, {Weight{1, 0}, 1}, {Weight{0, 1}, 1}}));
  EXPECT_EQ(polytope_character_oracle(fan, morseq::testing::p2_divisor(0), box), FiniteCharacter::one(2));
  EXPECT_EQ(polytope_character_oracle(fan, morseq::testing::p2_divisor(2), box).size(), 6u);
  EXPECT_TRUE(polytope_character_oracle(fan, morseq::testing::p2_divisor(-1), box).empty());
  EXPECT_THROW(polytope_character_oracle(fan, morseq::testing::p2_divisor(6), box), PolytopeEscapesBox);
}

TEST(Oracle, MatchesBruteForceOnSurfaces) {
  const auto box = CoordinateBox::cube(2, -8, 8);
  for (const auto& fan : {morseq::testing::p2_fan(), morseq::testing::p1xp1_fan(), morseq::testing::f1_fan()}) {
    for (const auto& d : morseq::testing::surface_divisors(fan)) {
      EXPECT_EQ(polytope_character_oracle(fan, d, box), polytope_points(fan, d, box));
    }
  }
}

TEST(Oracle, NefDivisors) {
  EXPECT_TRUE(is_nef(morseq::testing::p2_fan(), morseq::testing::p2_divisor(2)));
  EXPECT_FALSE(is_nef(morseq::testing::p2_fan(), morseq::testing::p2_divisor(-1)));
  EXPECT_TRUE(is_nef(morseq::testing::p1xp1_fan(), ToricDivisor{{2, 1, 0, 0}}));
  EXPECT_FALSE(is_nef(morseq::testing::p1xp1_fan(), ToricDivisor{{-2, 0, 0, 0}}));
  // on F1 the ray (0,1) gives the (-1)-curve and (0,-1) a fiber-transverse section
  EXPECT_FALSE(is_nef(morseq::testing::f1_fan(), ToricDivisor{{0, 1, 0, 0}}));
  EXPECT_TRUE(is_nef(morseq::testing::f1_fan(), ToricDivisor{{0, 0, 0, 1}}));
}

TEST(BBLimit, Examples) {
  const auto p2 = morseq::testing::p2_fan();
  EXPECT_EQ(bb_limit_cone(p2, {}, ChamberVector{{1, 2}}), 0u);
  for (std::size_t s = 0; s < p2.max_cones.size(); ++s) {
    EXPECT_EQ(bb_limit_cone(p2, p2.max_cones[s], ChamberVector{{1, 2}}), s);
  }
  EXPECT_EQ(bb_limit_cone(morseq::testing::p1_fan(), {}, ChamberVector{{-1}}), 1u);
  EXPECT_EQ(bb_limit_cone(morseq::testing::p1_fan(), {}, ChamberVector{{1}}), 0u);
  EXPECT_THROW(bb_limit_cone(p2, {}, ChamberVector{{1, 0}}), InvalidInput);
  EXPECT_FALSE(bb_limit_cone(morseq::testing::line_fan(), {}, ChamberVector{{-1}}).has_value());
}

TEST(BBLimit, RayOrbitsLandInAdjacentCones) {
  // the orbit of ray 0 of P^2 lies in the closure of cones 0 and 2
  const auto p2 = morseq::testing::p2_fan();
  EXPECT_EQ(bb_limit_cone(p2, {0}, ChamberVector{{1, 2}}), 0u);
  EXPECT_EQ(bb_limit_cone(p2, {0}, ChamberVector{{-1, -2}}), 2u);
  EXPECT_EQ(bb_limit_cone(p2, {1}, ChamberVector{{1, 2}}), 0u);
  EXPECT_EQ(bb_limit_cone(p2, {1}, ChamberVector{{-1, -2}}), 1u);
}

TEST(DefaultBox, CoversFixedPointWeights) {
  const auto fan = morseq::testing::p2_fan();
  const auto box = default_box(fan, morseq::testing::p2_divisor(3), 2);
  EXPECT_EQ(box.lo(), (std::vector<std::int64_t>{-2, -2}));
  EXPECT_EQ(box.hi(), (std::vector<std::int64_t>{5, 5}));
}
