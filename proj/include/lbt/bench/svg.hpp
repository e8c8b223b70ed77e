#pragma once

#include <algorithm>
#include <cstdio>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "lbt/cspace/scenario.hpp"
#include "lbt/planners/planner.hpp"

namespace lbt::bench {

namespace detail {

inline std::string svg_num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

inline std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace detail

/// Renders the workspace: obstacles filled, roadmap edges thin, the path
/// (if any) highlighted, start green and goal red. Only the position
/// coordinates are drawn, so the space must be planar or SE(2).
inline std::string emit_svg(const planners::RoadmapView& roadmap, const cspace::Scenario& scenario,
                            const std::optional<cspace::Path>& path = std::nullopt) {
  const auto& space = scenario.space;
  const bool planar = space.dimension() == 2 && !space.is_angular(0) && !space.is_angular(1);
  const bool se2 = space.dimension() == 3 && space.angular_index() == 2;
  if (!planar && !se2) throw std::invalid_argument("emit_svg supports 2-D and SE(2) spaces only");
  using detail::svg_num;

  const double x0 = space.bounds[0].lower, x1 = space.bounds[0].upper;
  const double y0 = space.bounds[1].lower, y1 = space.bounds[1].upper;
  const double w = x1 - x0, h = y1 - y0;
  const double scale = 800.0 / std::max(w, h);
  const double stroke = 1.0 / scale;
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << svg_num(w * scale) << "\" height=\""
     << svg_num(h * scale) << "\" viewBox=\"" << svg_num(x0) << ' ' << svg_num(-y1) << ' ' << svg_num(w) << ' '
     << svg_num(h) << "\">\n"
     << "<title>" << detail::xml_escape(scenario.name) << "</title>\n"
     << "<g transform=\"scale(1,-1)\">\n"
     << "<rect x=\"" << svg_num(x0) << "\" y=\"" << svg_num(y0) << "\" width=\"" << svg_num(w) << "\" height=\""
     << svg_num(h) << "\" fill=\"white\" stroke=\"black\" stroke-width=\"" << svg_num(2 * stroke) << "\"/>\n";

  os << "<g id=\"obstacles\" fill=\"#555555\">\n";
  for (const auto& obs : scenario.obstacles) {
    os << "<polygon points=\"";
    for (std::size_t i = 0; i < obs.polygon.size(); ++i) {
      os << (i ? " " : "") << svg_num(obs.polygon[i].x) << ',' << svg_num(obs.polygon[i].y);
    }
    os << "\"/>\n";
  }
  os << "</g>\n";

  os << "<g id=\"roadmap\" stroke=\"#7799cc\" stroke-width=\"" << svg_num(stroke) << "\">\n";
  for (const auto& e : roadmap.edges) {
    if (e.from >= roadmap.vertices.size() || e.to >= roadmap.vertices.size()) continue;
    const auto& a = roadmap.vertices[e.from];
    const auto& b = roadmap.vertices[e.to];
    os << "<line x1=\"" << svg_num(a[0]) << "\" y1=\"" << svg_num(a[1]) << "\" x2=\"" << svg_num(b[0]) << "\" y2=\""
       << svg_num(b[1]) << "\"/>\n";
  }
  os << "</g>\n";

  if (path && !path->empty()) {
    os << "<polyline id=\"path\" fill=\"none\" stroke=\"#dd8800\" stroke-width=\"" << svg_num(4 * stroke)
       << "\" points=\"";
    for (std::size_t i = 0; i < path->size(); ++i) {
      os << (i ? " " : "") << svg_num((*path)[i][0]) << ',' << svg_num((*path)[i][1]);
    }
    os << "\"/>\n";
  }

  const double marker = 0.01 * std::max(w, h);
  os << "<circle id=\"start\" cx=\"" << svg_num(scenario.start[0]) << "\" cy=\"" << svg_num(scenario.start[1])
     << "\" r=\"" << svg_num(marker) << "\" fill=\"green\"/>\n";
  const double goal_r = planar ? scenario.goal.radius : marker;
  os << "<circle id=\"goal\" cx=\"" << svg_num(scenario.goal.center[0]) << "\" cy=\""
     << svg_num(scenario.goal.center[1]) << "\" r=\"" << svg_num(goal_r) << "\" fill=\"red\" fill-opacity=\"0.5\"/>\n";
  os << "</g>\n</svg>\n";
  return os.str();
}

}  // namespace lbt::bench
