#pragma once

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "lbt/cspace/sampling.hpp"
#include "lbt/cspace/scenario.hpp"

namespace lbt::cspace {

/// Malformed scenario document. The message names the offending field.
class ScenarioFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

using nlohmann::json;

[[noreturn]] inline void bad_field(const std::string& field, const std::string& what) {
  throw ScenarioFormatError("field '" + field + "': " + what);
}

inline const json& require(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) bad_field(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) bad_field(path.empty() ? key : path + "." + key, "missing");
  return *it;
}

inline double number(const json& v, const std::string& field) {
  if (!v.is_number()) bad_field(field, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) bad_field(field, "must be finite");
  return d;
}

inline std::vector<double> numbers(const json& v, const std::string& field) {
  if (!v.is_array()) bad_field(field, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(number(v[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

inline Polygon polygon(const json& v, const std::string& field) {
  if (!v.is_array()) bad_field(field, "expected an array of [x, y] points");
  Polygon poly;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string f = field + "[" + std::to_string(i) + "]";
    const auto xy = numbers(v[i], f);
    if (xy.size() != 2) bad_field(f, "expected [x, y]");
    poly.push_back({xy[0], xy[1]});
  }
  return poly;
}

inline Configuration configuration(const json& v, const SpaceDefinition& space, const std::string& field) {
  const auto c = numbers(v, field);
  if (c.size() != space.dimension()) {
    bad_field(field, "expected " + std::to_string(space.dimension()) + " coordinates");
  }
  Configuration q{std::span<const double>(c)};
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (space.is_angular(i)) q[i] = normalize_angle(q[i]);
  }
  return q;
}

}  // namespace detail

/// Parses and validates a scenario document.
inline Scenario parse_scenario(const nlohmann::json& doc) {
  using detail::bad_field;
  using detail::require;
  Scenario s;
  const auto& name = require(doc, "name", "");
  if (!name.is_string()) bad_field("name", "expected a string");
  s.name = name.get<std::string>();

  const auto& space = require(doc, "space", "");
  const auto& tags = require(space, "tags", "space");
  if (!tags.is_array()) bad_field("space.tags", "expected an array");
  for (std::size_t i = 0; i < tags.size(); ++i) {
    const std::string t = tags[i].is_string() ? tags[i].get<std::string>() : "";
    if (t == "e") {
      s.space.kinds.push_back(CoordKind::Euclidean);
    } else if (t == "a") {
      s.space.kinds.push_back(CoordKind::Angular);
    } else {
      bad_field("space.tags[" + std::to_string(i) + "]", "expected \"e\" or \"a\"");
    }
  }
  const auto& dim = require(space, "dimension", "space");
  if (!dim.is_number_integer() || dim.get<long long>() != static_cast<long long>(s.space.kinds.size())) {
    bad_field("space.dimension", "must be an integer equal to the number of tags");
  }
  const auto& bounds = require(space, "bounds", "space");
  if (!bounds.is_array() || bounds.size() != s.space.kinds.size()) {
    bad_field("space.bounds", "expected one [lo, hi] pair per coordinate");
  }
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    const auto b = detail::numbers(bounds[i], "space.bounds[" + std::to_string(i) + "]");
    if (b.size() != 2) bad_field("space.bounds[" + std::to_string(i) + "]", "expected [lo, hi]");
    s.space.bounds.push_back({b[0], b[1]});
    if (s.space.is_angular(i)) s.space.bounds.back() = {0.0, kTwoPi};
  }

  const auto& robot = require(doc, "robot", "");
  const auto& type = require(robot, "type", "robot");
  const std::string kind = type.is_string() ? type.get<std::string>() : "";
  if (kind == "point") {
    s.robot = PointRobot{};
  } else if (kind == "disc") {
    s.robot = DiscRobot{detail::number(require(robot, "radius", "robot"), "robot.radius")};
  } else if (kind == "polygon") {
    s.robot = PolygonRobot{detail::polygon(require(robot, "vertices", "robot"), "robot.vertices")};
  } else {
    bad_field("robot.type", "expected \"point\", \"disc\" or \"polygon\"");
  }

  if (auto w = space.find("w_theta"); w != space.end()) {
    s.space.angular_weight = detail::number(*w, "space.w_theta");
  } else if (circumradius(s.robot) > 0.0) {
    s.space.angular_weight = circumradius(s.robot);
  }

  const auto& obstacles = require(doc, "obstacles", "");
  if (!obstacles.is_array()) bad_field("obstacles", "expected an array of polygons");
  for (std::size_t i = 0; i < obstacles.size(); ++i) {
    s.obstacles.emplace_back(detail::polygon(obstacles[i], "obstacles[" + std::to_string(i) + "]"));
  }

  s.start = detail::configuration(require(doc, "start", ""), s.space, "start");
  const auto& goal = require(doc, "goal", "");
  s.goal.center = detail::configuration(require(goal, "center", "goal"), s.space, "goal.center");
  s.goal.radius = detail::number(require(goal, "radius", "goal"), "goal.radius");

  if (auto bk = doc.find("best_known"); bk != doc.end() && !bk->is_null()) {
    s.reference.best_known = detail::number(*bk, "best_known");
  }
  if (auto wr = doc.find("wide_route_cost"); wr != doc.end() && !wr->is_null()) {
    s.reference.wide_route = detail::number(*wr, "wide_route_cost");
  }
  if (auto pv = doc.find("best_known_provenance"); pv != doc.end() && pv->is_string()) {
    s.reference.provenance = pv->get<std::string>();
  }

  try {
    validate_scenario(s);
  } catch (const std::invalid_argument& e) {
    throw ScenarioFormatError(std::string("invalid scenario: ") + e.what());
  }
  return s;
}

inline Scenario parse_scenario(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ScenarioFormatError(std::string("malformed JSON: ") + e.what());
  }
  return parse_scenario(doc);
}

inline Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioFormatError("cannot open scenario file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_scenario(buffer.str());
  } catch (const ScenarioFormatError& e) {
    throw ScenarioFormatError(path + ": " + e.what());
  }
}

}  // namespace lbt::cspace
