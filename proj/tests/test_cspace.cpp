#include <gtest/gtest.h>

#include <cmath>

#include "lbt/core/indexed_heap.hpp"
#include "lbt/cspace/collision.hpp"
#include "lbt/cspace/sampling.hpp"
#include "lbt/cspace/scenario_io.hpp"
#include "lbt/bench/scenarios.hpp"
#include "support/oracles.hpp"

using namespace lbt;
using namespace lbt::cspace;

namespace {

SpaceDefinition plane() { return euclidean_space({{-10.0, 10.0}, {-10.0, 10.0}}); }
SpaceDefinition se2() { return se2_space({-10.0, 10.0}, {-10.0, 10.0}, 1.0); }

Scenario unit_square_world(RobotModel robot) {
  Scenario s = test::box_world(10.0, {}, {5.0, 5.0}, {9.0, 9.0}, 0.5);
  s.space = euclidean_space({{-5.0, 10.0}, {-5.0, 10.0}});
  s.robot = robot;
  s.obstacles.emplace_back(Polygon{{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  return s;
}

Configuration random_config(const SpaceDefinition& space, Rng& rng) { return sample_uniform(space, rng); }

}  // namespace

TEST(IndexedHeap, OrdersByKeyThenId) {
  IndexedHeap<double> h;
  h.push_or_update(3, 2.0);
  h.push_or_update(1, 2.0);
  h.push_or_update(2, 1.0);
  EXPECT_EQ(h.pop(), 2u);
  EXPECT_EQ(h.pop(), 1u);
  h.push_or_update(5, 0.5);
  h.update(3, 0.1);
  EXPECT_EQ(h.top(), 3u);
  h.erase(3);
  EXPECT_FALSE(h.contains(3));
  EXPECT_EQ(h.pop(), 5u);
  EXPECT_TRUE(h.empty());
}

TEST(IndexedHeap, RandomAgainstSort) {
  Rng rng(7);
  IndexedHeap<double> h;
  std::vector<double> key(200, -1.0);
  for (int round = 0; round < 5000; ++round) {
    const auto id = static_cast<VertexId>(rng.below(200));
    if (rng.uniform01() < 0.2 && h.contains(id)) {
      h.erase(id);
      key[id] = -1.0;
    } else {
      key[id] = std::floor(rng.uniform(0.0, 50.0));
      h.push_or_update(id, key[id]);
    }
  }
  std::vector<std::pair<double, VertexId>> expect;
  for (VertexId i = 0; i < 200; ++i) {
    if (key[i] >= 0.0) expect.push_back({key[i], i});
  }
  std::sort(expect.begin(), expect.end());
  for (const auto& e : expect) EXPECT_EQ(h.pop(), e.second);
  EXPECT_TRUE(h.empty());
}

TEST(Distance, Examples) {
  EXPECT_DOUBLE_EQ(distance(plane(), {0, 0}, {3, 4}), 5.0);
  EXPECT_EQ(distance(plane(), {1.5, -2}, {1.5, -2}), 0.0);
  EXPECT_NEAR(distance(se2(), {0, 0, 0.1}, {0, 0, kTwoPi - 0.1}), 0.2, 1e-12);
  EXPECT_THROW(distance(plane(), {0, 0}, {0, 0, 0}), std::invalid_argument);
}

TEST(Distance, MetricAxioms) {
  Rng rng(1);
  for (const auto& space : {plane(), se2()}) {
    for (int i = 0; i < 10000; ++i) {
      const auto a = random_config(space, rng), b = random_config(space, rng), c = random_config(space, rng);
      const double ab = distance(space, a, b), ba = distance(space, b, a);
      ASSERT_EQ(ab, ba);
      ASSERT_GE(ab, 0.0);
      const double ac = distance(space, a, c), cb = distance(space, c, b);
      ASSERT_LE(ab, (ac + cb) * (1.0 + 1e-12));
    }
  }
}

TEST(Steer, Examples) {
  EXPECT_EQ(steer(plane(), {0, 0}, {10, 0}, 1.0), (Configuration{1, 0}));
  EXPECT_EQ(steer(plane(), {0, 0}, {0.5, 0}, 1.0), (Configuration{0.5, 0}));
  const auto q = steer(se2(), {0, 0, 0.2}, {0, 0, kTwoPi - 0.2}, 0.1);
  EXPECT_NEAR(q[2], 0.1, 1e-12);
  EXPECT_THROW(steer(plane(), {0, 0}, {1, 0}, 0.0), std::invalid_argument);
}

TEST(Steer, ContractsAndNormalizes) {
  Rng rng(2);
  for (const auto& space : {plane(), se2()}) {
    for (int i = 0; i < 10000; ++i) {
      const auto a = random_config(space, rng), b = random_config(space, rng);
      if (a == b) continue;
      const auto s = steer(space, a, b, rng.uniform(0.01, 3.0));
      ASSERT_LT(distance(space, s, b), distance(space, a, b));
      ASSERT_TRUE(is_valid(space, s));
    }
  }
}

TEST(Interpolate, Examples) {
  EXPECT_EQ(interpolate(plane(), {0, 0}, {2, 2}, 0.5), (Configuration{1, 1}));
  EXPECT_EQ(interpolate(plane(), {0.3, 0.7}, {2, 2}, 0.0), (Configuration{0.3, 0.7}));
  const auto mid = interpolate(se2(), {0, 0, 0.2}, {0, 0, kTwoPi - 0.2}, 0.5);
  EXPECT_TRUE(mid[2] < 1e-12 || mid[2] > kTwoPi - 1e-12);
  EXPECT_TRUE(is_valid(se2(), mid));
  EXPECT_THROW(interpolate(plane(), {0, 0}, {1, 1}, 1.5), std::invalid_argument);
}

TEST(Collision, ConfigExamples) {
  EXPECT_TRUE(collision_free_config(unit_square_world(PointRobot{}), {5, 5}));
  EXPECT_FALSE(collision_free_config(unit_square_world(PointRobot{}), {0.5, 0.5}));
  const auto disc = unit_square_world(DiscRobot{1.0});
  EXPECT_FALSE(collision_free_config(disc, {2, 0.5}));  // touching counts
  EXPECT_TRUE(collision_free_config(disc, {2.0 + 1e-9, 0.5}));
}

TEST(Collision, DiscAgreesWithSampledDistance) {
  const auto s = unit_square_world(DiscRobot{0.7});
  Rng rng(3);
  for (int i = 0; i < 2000; ++i) {
    const Configuration q{rng.uniform(-2, 3), rng.uniform(-2, 3)};
    // Brute-force distance from q to the square by sampling its boundary.
    double d = kInfiniteCost;
    const bool inside = q[0] >= 0 && q[0] <= 1 && q[1] >= 0 && q[1] <= 1;
    for (int k = 0; k <= 4000; ++k) {
      const double t = k / 4000.0;
      const Vec2 pts[4] = {{t, 0}, {1, t}, {1 - t, 1}, {0, 1 - t}};
      for (auto p : pts) d = std::min(d, std::hypot(q[0] - p.x, q[1] - p.y));
    }
    if (std::abs(d - 0.7) < 1e-3) continue;  // sampling is too coarse at the boundary
    EXPECT_EQ(collision_free_config(s, q), !inside && d > 0.7) << q[0] << "," << q[1];
  }
}

TEST(Collision, MotionExamples) {
  const auto s = unit_square_world(PointRobot{});
  EXPECT_FALSE(collision_free_motion(s, {-1, 0.5}, {2, 0.5}, 0.1));
  EXPECT_TRUE(collision_free_motion(s, {3, 3}, {3, 3}, 0.1));
  EXPECT_TRUE(collision_free_motion(s, {-1, 2}, {2, 2}, 0.1));
  EXPECT_FALSE(collision_free_motion(s, {-1, 1}, {2, 1}, 0.1));  // grazing the top edge
  EXPECT_THROW(collision_free_motion(s, {-1, 2}, {2, 2}, 0.0), std::invalid_argument);
}

TEST(Collision, PointMotionSymmetricAndMatchesDenseOracle) {
  for (const auto& s : bench::bundled_scenarios()) {
    if (!std::holds_alternative<PointRobot>(s.robot)) continue;
    Rng rng(11);
    int disagreements = 0;
    for (int i = 0; i < 1000; ++i) {
      const auto a = sample_uniform(s.space, rng);
      const auto b = steer(s.space, a, sample_uniform(s.space, rng), 3.0);
      const bool exact = collision_free_motion(s, a, b, 0.1);
      ASSERT_EQ(exact, collision_free_motion(s, b, a, 0.1));
      if (exact != test::dense_motion_free(s, a, b, 10000)) ++disagreements;
    }
    EXPECT_EQ(disagreements, 0) << s.name;
  }
}

TEST(Collision, PolygonRobotRotates) {
  Scenario s = unit_square_world(PolygonRobot{{{-1.5, -0.1}, {1.5, -0.1}, {1.5, 0.1}, {-1.5, 0.1}}});
  s.space = se2_space({-5, 10}, {-5, 10}, 1.5);
  s.start = {5, 5, 0};
  s.goal = {{8, 8, 0}, 0.5};
  // A horizontal bar beside the square hits it, a vertical one does not.
  EXPECT_FALSE(collision_free_config(s, {2.2, 0.5, 0.0}));
  EXPECT_TRUE(collision_free_config(s, {2.2, 0.5, kPi / 2}));
}

TEST(Sampling, Examples) {
  Scenario s = test::box_world(1.0, {}, {0.5, 0.5}, {0.9, 0.9}, 0.05);
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) {
    const auto q = sample_free(s, a);
    ASSERT_TRUE(q[0] >= 0 && q[0] <= 1 && q[1] >= 0 && q[1] <= 1);
    ASSERT_EQ(q, sample_free(s, b));
  }
  Scenario covered = test::box_world(1.0, {{-1, -1, 2, 2}}, {0.5, 0.5}, {0.9, 0.9}, 0.05);
  Rng c(1);
  EXPECT_THROW(sample_free(covered, c, nullptr, 1000), NoFreeSpaceError);
}

TEST(Sampling, GoalSamplesLieInGoal) {
  auto s = bench::bundled_scenario("maze");
  Rng rng(5);
  for (int i = 0; i < 500; ++i) ASSERT_TRUE(in_goal(s, sample_goal(s, rng)));
}

TEST(InGoal, ClosedBall) {
  Scenario s = test::box_world(10.0, {}, {1, 1}, {5, 5}, 1.0);
  EXPECT_TRUE(in_goal(s, {5, 5}));
  EXPECT_TRUE(in_goal(s, {6, 5}));
  EXPECT_FALSE(in_goal(s, {6 + 1e-9, 5}));
}

TEST(ScenarioIo, RejectsMalformedDocuments) {
  const std::string ok = R"({"name":"t","space":{"dimension":2,"tags":["e","e"],"bounds":[[0,1],[0,1]]},
    "robot":{"type":"point"},"obstacles":[],"start":[0.1,0.1],"goal":{"center":[0.9,0.9],"radius":0.1}})";
  EXPECT_NO_THROW(parse_scenario(ok));
  EXPECT_THROW(parse_scenario(std::string("{")), ScenarioFormatError);
  auto bad = [&](const std::string& from, const std::string& to) {
    std::string doc = ok;
    doc.replace(doc.find(from), from.size(), to);
    return doc;
  };
  EXPECT_THROW(parse_scenario(bad(R"("type":"point")", R"("type":"blob")")), ScenarioFormatError);
  EXPECT_THROW(parse_scenario(bad("[[0,1],[0,1]]", "[[1,0],[0,1]]")), ScenarioFormatError);
  EXPECT_THROW(parse_scenario(bad("[0.1,0.1]", "[0.1]")), ScenarioFormatError);
  EXPECT_THROW(parse_scenario(bad(R"("obstacles":[])", R"("obstacles":[[[0,0],[1,1]]])")), ScenarioFormatError);
}

TEST(ScenarioIo, Se2DefaultsAngularWeightToCircumradius) {
  const std::string doc = R"({"name":"t","space":{"dimension":3,"tags":["e","e","a"],"bounds":[[0,10],[0,10],[0,6.283185307179586]]},
    "robot":{"type":"polygon","vertices":[[-0.3,-0.4],[0.3,-0.4],[0.3,0.4],[-0.3,0.4]]},"obstacles":[],
    "start":[1,1,0],"goal":{"center":[9,9,0],"radius":0.5}})";
  const auto s = parse_scenario(doc);
  EXPECT_DOUBLE_EQ(s.space.angular_weight, 0.5);
}

TEST(BundledScenarios, ValidStartsAndReferenceCosts) {
  const auto all = bench::bundled_scenarios();
  EXPECT_GE(all.size(), 4u);
  for (const auto& s : all) {
    EXPECT_TRUE(collision_free_config(s, s.start)) << s.name;
    ASSERT_TRUE(s.reference.best_known) << s.name;
    EXPECT_FALSE(s.reference.provenance.empty());
    if (s.reference.wide_route) {
      EXPECT_GT(*s.reference.wide_route, *s.reference.best_known) << s.name;
    }
  }
  EXPECT_TRUE(bench::bundled_scenario("alternating_gaps").reference.wide_route);
  EXPECT_TRUE(bench::bundled_scenario("corridors").reference.wide_route);
}
