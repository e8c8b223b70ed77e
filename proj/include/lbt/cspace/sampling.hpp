#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "lbt/core/types.hpp"
#include "lbt/cspace/collision.hpp"
#include "lbt/cspace/scenario.hpp"

namespace lbt::cspace {

inline constexpr std::uint64_t kDefaultRejectionCap = 1'000'000;

/// Uniform draw over the bounding box (uniform angle on angular coordinates).
inline Configuration sample_uniform(const SpaceDefinition& space, Rng& rng) {
  Configuration q(space.dimension());
  for (std::size_t i = 0; i < space.dimension(); ++i) {
    q[i] = space.is_angular(i) ? normalize_angle(rng.uniform(0.0, kTwoPi))
                               : rng.uniform(space.bounds[i].lower, space.bounds[i].upper);
  }
  return q;
}

/// Rejection sampling of a collision-free configuration.
inline Configuration sample_free(const Scenario& scenario, Rng& rng, CollisionStats* stats = nullptr,
                                 std::uint64_t cap = kDefaultRejectionCap) {
  for (std::uint64_t attempt = 0; attempt < cap; ++attempt) {
    Configuration q = sample_uniform(scenario.space, rng);
    if (collision_free_config(scenario, q, stats)) return q;
  }
  throw NoFreeSpaceError("sample_free: no free configuration after " + std::to_string(cap) +
                         " draws in scenario '" + scenario.name + "'");
}

/// Rejection sampling of a free configuration inside the goal ball, drawing
/// from the ball's bounding box clipped to the space bounds.
inline Configuration sample_goal(const Scenario& scenario, Rng& rng, CollisionStats* stats = nullptr,
                                 std::uint64_t cap = kDefaultRejectionCap) {
  const auto& space = scenario.space;
  const auto& goal = scenario.goal;
  for (std::uint64_t attempt = 0; attempt < cap; ++attempt) {
    Configuration q(space.dimension());
    for (std::size_t i = 0; i < space.dimension(); ++i) {
      if (space.is_angular(i)) {
        const double half = std::min(kPi, goal.radius / space.angular_weight);
        q[i] = normalize_angle(goal.center[i] + rng.uniform(-half, half));
      } else {
        const double lo = std::max(space.bounds[i].lower, goal.center[i] - goal.radius);
        const double hi = std::min(space.bounds[i].upper, goal.center[i] + goal.radius);
        q[i] = rng.uniform(lo, hi);
      }
    }
    if (!in_goal(scenario, q)) continue;
    if (collision_free_config(scenario, q, stats)) return q;
  }
  throw NoFreeSpaceError("sample_goal: no free goal configuration after " + std::to_string(cap) +
                         " draws in scenario '" + scenario.name + "'");
}

/// Checks the structural invariants of a scenario; throws std::invalid_argument.
inline void validate_scenario(const Scenario& scenario) {
  scenario.space.validate();
  if (scenario.space.is_angular(0) || scenario.space.is_angular(1)) {
    throw std::invalid_argument("the first two coordinates must be the Euclidean workspace position");
  }
  if (const auto* disc = std::get_if<DiscRobot>(&scenario.robot); disc && !(disc->radius > 0.0)) {
    throw std::invalid_argument("disc robot radius must be positive");
  }
  if (const auto* poly = std::get_if<PolygonRobot>(&scenario.robot); poly && !is_simple(poly->vertices)) {
    throw std::invalid_argument("robot polygon must be simple with at least 3 vertices");
  }
  for (std::size_t i = 0; i < scenario.obstacles.size(); ++i) {
    if (!is_simple(scenario.obstacles[i].polygon)) {
      throw std::invalid_argument("obstacle " + std::to_string(i) + " is not a simple polygon");
    }
  }
  if (!is_valid(scenario.space, scenario.start)) {
    throw std::invalid_argument("start configuration is not valid in the space");
  }
  if (!is_valid(scenario.space, scenario.goal.center)) {
    throw std::invalid_argument("goal center is not valid in the space");
  }
  if (!(scenario.goal.radius > 0.0)) throw std::invalid_argument("goal radius must be positive");
  for (std::size_t i = 0; i < scenario.space.dimension(); ++i) {
    if (scenario.space.is_angular(i)) continue;
    const auto& b = scenario.space.bounds[i];
    const double c = scenario.goal.center[i];
    if (c + scenario.goal.radius < b.lower || c - scenario.goal.radius > b.upper) {
      throw std::invalid_argument("goal region does not meet the bounding box");
    }
  }
  if (!collision_free_config(scenario, scenario.start)) {
    throw std::invalid_argument("start configuration is in collision");
  }
}

}  // namespace lbt::cspace
