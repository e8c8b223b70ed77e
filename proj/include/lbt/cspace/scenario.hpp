#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "lbt/cspace/geometry.hpp"
#include "lbt/cspace/space.hpp"

namespace lbt::cspace {

struct PointRobot {};

struct DiscRobot {
  double radius = 0.0;
};

/// Rigid polygon given counterclockwise in the body frame.
struct PolygonRobot {
  Polygon vertices;
};

using RobotModel = std::variant<PointRobot, DiscRobot, PolygonRobot>;

/// Largest distance from the body origin to any point of the robot.
inline double circumradius(const RobotModel& robot) {
  if (const auto* disc = std::get_if<DiscRobot>(&robot)) return disc->radius;
  if (const auto* poly = std::get_if<PolygonRobot>(&robot)) {
    double r = 0.0;
    for (Vec2 v : poly->vertices) r = std::max(r, norm(v));
    return r;
  }
  return 0.0;
}

/// Metric ball around a center configuration (closed).
struct GoalRegion {
  Configuration center;
  double radius = 0.0;
};

struct Obstacle {
  Polygon polygon;
  Box box;

  explicit Obstacle(Polygon p) : polygon(std::move(p)), box(bounding_box(polygon)) {}
};

/// Optional reference costs shipped with a scenario file.
struct ReferenceCosts {
  std::optional<double> best_known;
  std::optional<double> wide_route;  // best cost when the narrow passages are excluded
  std::string provenance;
};

struct Scenario {
  std::string name;
  SpaceDefinition space;
  RobotModel robot;
  std::vector<Obstacle> obstacles;
  Configuration start;
  GoalRegion goal;
  ReferenceCosts reference;

  [[nodiscard]] Box workspace_box() const {
    return {{space.bounds[0].lower, space.bounds[1].lower}, {space.bounds[0].upper, space.bounds[1].upper}};
  }
};

using Path = std::vector<Configuration>;

inline bool in_goal(const Scenario& scenario, const Configuration& q) {
  return distance(scenario.space, q, scenario.goal.center) <= scenario.goal.radius;
}

}  // namespace lbt::cspace
