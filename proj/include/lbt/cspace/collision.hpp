#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <variant>

#include "lbt/cspace/geometry.hpp"
#include "lbt/cspace/scenario.hpp"
#include "lbt/cspace/space.hpp"

namespace lbt::cspace {

/// Primitive-operation counters. Local-planner calls are motion checks.
struct CollisionStats {
  std::uint64_t config_checks = 0;
  std::uint64_t motion_checks = 0;
};

namespace detail {

inline Vec2 position(const Configuration& q) { return {q[0], q[1]}; }

inline bool within_euclidean_bounds(const SpaceDefinition& space, const Configuration& q) {
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (space.is_angular(i)) continue;
    if (q[i] < space.bounds[i].lower || q[i] > space.bounds[i].upper) return false;
  }
  return true;
}

inline bool boxes_overlap(const Box& a, const Box& b) {
  return a.min.x <= b.max.x && b.min.x <= a.max.x && a.min.y <= b.max.y && b.min.y <= a.max.y;
}

inline bool point_free(const Scenario& s, Vec2 p) {
  for (const auto& obs : s.obstacles) {
    if (obs.box.contains(p) && point_in_polygon(obs.polygon, p)) return false;
  }
  return true;
}

inline bool disc_free(const Scenario& s, Vec2 c, double r) {
  const Box box = s.workspace_box();
  if (c.x - r < box.min.x || c.x + r > box.max.x || c.y - r < box.min.y || c.y + r > box.max.y) {
    return false;
  }
  const Box disc_box{{c.x - r, c.y - r}, {c.x + r, c.y + r}};
  for (const auto& obs : s.obstacles) {
    if (!boxes_overlap(disc_box, obs.box)) continue;
    if (!(point_polygon_distance(obs.polygon, c) > r)) return false;
  }
  return true;
}

inline bool polygon_free(const Scenario& s, const Polygon& body, const Configuration& q) {
  const double theta = s.space.angular_index() < q.size() ? q[s.space.angular_index()] : 0.0;
  const Polygon placed = transformed(body, position(q), theta);
  const Box box = s.workspace_box();
  for (Vec2 v : placed) {
    if (!box.contains(v)) return false;
  }
  const Box robot_box = bounding_box(placed);
  for (const auto& obs : s.obstacles) {
    if (!boxes_overlap(robot_box, obs.box)) continue;
    if (polygons_intersect(placed, obs.polygon)) return false;
  }
  return true;
}

}  // namespace detail

/// Static validity of one configuration. Obstacles are closed: touching counts
/// as collision.
inline bool collision_free_config(const Scenario& scenario, const Configuration& q,
                                  CollisionStats* stats = nullptr) {
  if (stats) ++stats->config_checks;
  if (!detail::within_euclidean_bounds(scenario.space, q)) return false;
  const Vec2 p = detail::position(q);
  return std::visit(
      [&](const auto& robot) -> bool {
        using T = std::decay_t<decltype(robot)>;
        if constexpr (std::is_same_v<T, PointRobot>) {
          return detail::point_free(scenario, p);
        } else if constexpr (std::is_same_v<T, DiscRobot>) {
          return detail::disc_free(scenario, p, robot.radius);
        } else {
          return detail::polygon_free(scenario, robot.vertices, q);
        }
      },
      scenario.robot);
}

/// Local planner. Point robots get an exact segment test; other robots are
/// sampled by bisection until neighboring samples are at most `resolution`
/// apart, midpoints first.
inline bool collision_free_motion(const Scenario& scenario, const Configuration& a,
                                  const Configuration& b, double resolution,
                                  CollisionStats* stats = nullptr) {
  if (!(resolution > 0.0)) throw std::invalid_argument("motion resolution must be positive");
  if (stats) ++stats->motion_checks;
  if (std::holds_alternative<PointRobot>(scenario.robot)) {
    if (!collision_free_config(scenario, a, stats) || !collision_free_config(scenario, b, stats)) {
      return false;
    }
    const Vec2 pa = detail::position(a);
    const Vec2 pb = detail::position(b);
    const Box seg{{std::min(pa.x, pb.x), std::min(pa.y, pb.y)}, {std::max(pa.x, pb.x), std::max(pa.y, pb.y)}};
    for (const auto& obs : scenario.obstacles) {
      if (!detail::boxes_overlap(seg, obs.box)) continue;
      if (segment_hits_polygon(obs.polygon, pa, pb)) return false;
    }
    return true;
  }

  if (!collision_free_config(scenario, a, stats) || !collision_free_config(scenario, b, stats)) {
    return false;
  }
  const double length = distance(scenario.space, a, b);
  if (length <= resolution) return true;
  // Smallest power of two segment count that meets the resolution.
  std::uint64_t segments = 1;
  while (length / static_cast<double>(segments) > resolution) segments *= 2;
  for (std::uint64_t step = segments / 2; step >= 1; step /= 2) {
    // Odd multiples of `step` are the samples new at this level.
    for (std::uint64_t i = step; i < segments; i += 2 * step) {
      const double t = static_cast<double>(i) / static_cast<double>(segments);
      if (!collision_free_config(scenario, interpolate(scenario.space, a, b, t), stats)) return false;
    }
    if (step == 1) break;
  }
  return true;
}

}  // namespace lbt::cspace
