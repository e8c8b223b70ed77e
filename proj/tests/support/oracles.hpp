#pragma once

// Reference implementations the tests compare the library against. They are
// deliberately simple (from scratch, no incremental state).

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <functional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "lbt/core/types.hpp"
#include "lbt/cspace/collision.hpp"
#include "lbt/cspace/scenario.hpp"
#include "lbt/cspace/scenario_io.hpp"
#include "lbt/cspace/space.hpp"

namespace lbt::test {

struct WeightedEdge {
  VertexId from;
  VertexId to;
  Cost weight;
};

using Adjacency = std::vector<std::vector<std::pair<VertexId, Cost>>>;

inline Adjacency adjacency(std::size_t n, const std::vector<WeightedEdge>& edges) {
  Adjacency adj(n);
  for (const auto& e : edges) adj[e.from].push_back({e.to, e.weight});
  return adj;
}

/// Textbook binary-heap Dijkstra.
inline std::vector<Cost> dijkstra(const Adjacency& adj, VertexId source) {
  std::vector<Cost> dist(adj.size(), kInfiniteCost);
  using Item = std::pair<Cost, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[source] = 0.0;
  pq.push({0.0, source});
  while (!pq.empty()) {
    const auto [d, u] = pq.top();
    pq.pop();
    if (d > dist[u]) continue;
    for (const auto& [v, w] : adj[u]) {
      const Cost c = d + w;
      if (c < dist[v]) {
        dist[v] = c;
        pq.push({c, v});
      }
    }
  }
  return dist;
}

/// Cheapest distance from `source` to any vertex flagged in `goal`.
inline Cost multi_goal_dijkstra(const Adjacency& adj, VertexId source, const std::vector<char>& goal) {
  const auto dist = dijkstra(adj, source);
  Cost best = kInfiniteCost;
  for (VertexId v = 0; v < dist.size(); ++v) {
    if (goal[v]) best = std::min(best, dist[v]);
  }
  return best;
}

/// Shortest start-to-goal-region cost on the r-disc graph over `points`
/// (undirected, metric weights, every edge assumed free).
inline Cost disc_graph_cost(const cspace::Scenario& s, const std::vector<cspace::Configuration>& points, double r) {
  const std::size_t n = points.size();
  Adjacency adj(n);
  for (VertexId i = 0; i < n; ++i) {
    for (VertexId j = i + 1; j < n; ++j) {
      const double d = cspace::distance(s.space, points[i], points[j]);
      if (d <= r) {
        adj[i].push_back({j, d});
        adj[j].push_back({i, d});
      }
    }
  }
  std::vector<char> goal(n);
  for (VertexId i = 0; i < n; ++i) goal[i] = cspace::in_goal(s, points[i]) ? 1 : 0;
  return multi_goal_dijkstra(adj, 0, goal);
}

/// Brute-force neighbor queries, ordered by (distance, id).
inline std::vector<VertexId> brute_k_nearest(const cspace::SpaceDefinition& space,
                                             const std::vector<cspace::Configuration>& pts,
                                             const cspace::Configuration& q, std::size_t k,
                                             VertexId exclude = kNoVertex) {
  std::vector<std::pair<double, VertexId>> all;
  for (VertexId i = 0; i < pts.size(); ++i) {
    if (i != exclude) all.push_back({cspace::distance(space, q, pts[i]), i});
  }
  std::sort(all.begin(), all.end());
  std::vector<VertexId> out;
  for (std::size_t i = 0; i < std::min(k, all.size()); ++i) out.push_back(all[i].second);
  return out;
}

inline std::vector<VertexId> brute_radius(const cspace::SpaceDefinition& space,
                                          const std::vector<cspace::Configuration>& pts,
                                          const cspace::Configuration& q, double r, VertexId exclude = kNoVertex) {
  std::vector<std::pair<double, VertexId>> all;
  for (VertexId i = 0; i < pts.size(); ++i) {
    const double d = cspace::distance(space, q, pts[i]);
    if (i != exclude && d <= r) all.push_back({d, i});
  }
  std::sort(all.begin(), all.end());
  std::vector<VertexId> out;
  for (const auto& h : all) out.push_back(h.second);
  return out;
}

/// Motion validity by dense configuration sampling.
inline bool dense_motion_free(const cspace::Scenario& s, const cspace::Configuration& a,
                              const cspace::Configuration& b, std::size_t samples) {
  for (std::size_t i = 0; i <= samples; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(samples);
    if (!cspace::collision_free_config(s, cspace::interpolate(s.space, a, b, t))) return false;
  }
  return true;
}

/// Minimal XML well-formedness check: balanced tags, quoted attributes,
/// known entities, a single root element.
inline bool xml_well_formed(const std::string& doc, std::string* why = nullptr) {
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  std::vector<std::string> stack;
  std::size_t i = 0, roots = 0;
  const std::size_t n = doc.size();
  auto is_name = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == ':' || c == '.'; };
  while (i < n) {
    if (doc[i] == '&') {
      const auto semi = doc.find(';', i);
      if (semi == std::string::npos) return fail("unterminated entity");
      const std::string ent = doc.substr(i + 1, semi - i - 1);
      if (ent != "amp" && ent != "lt" && ent != "gt" && ent != "quot" && ent != "apos" && ent.rfind('#', 0) != 0) {
        return fail("unknown entity " + ent);
      }
      i = semi + 1;
      continue;
    }
    if (doc[i] != '<') {
      if (doc[i] == '>') return fail("stray >");
      if (stack.empty() && !std::isspace(static_cast<unsigned char>(doc[i]))) return fail("text outside root");
      ++i;
      continue;
    }
    if (doc.compare(i, 4, "<!--") == 0) {
      const auto end = doc.find("-->", i + 4);
      if (end == std::string::npos) return fail("unterminated comment");
      i = end + 3;
      continue;
    }
    if (doc.compare(i, 2, "<?") == 0) {
      const auto end = doc.find("?>", i + 2);
      if (end == std::string::npos) return fail("unterminated declaration");
      i = end + 2;
      continue;
    }
    const bool closing = i + 1 < n && doc[i + 1] == '/';
    std::size_t j = i + (closing ? 2 : 1);
    const std::size_t name_start = j;
    while (j < n && is_name(doc[j])) ++j;
    const std::string name = doc.substr(name_start, j - name_start);
    if (name.empty()) return fail("empty tag name");
    bool self_closing = false;
    while (true) {
      while (j < n && std::isspace(static_cast<unsigned char>(doc[j]))) ++j;
      if (j >= n) return fail("unterminated tag");
      if (doc[j] == '>') {
        ++j;
        break;
      }
      if (doc[j] == '/' && j + 1 < n && doc[j + 1] == '>') {
        if (closing) return fail("malformed closing tag");
        self_closing = true;
        j += 2;
        break;
      }
      if (closing) return fail("attributes on closing tag");
      const std::size_t a0 = j;
      while (j < n && is_name(doc[j])) ++j;
      if (j == a0 || j >= n || doc[j] != '=') return fail("malformed attribute in <" + name + ">");
      ++j;
      if (j >= n || (doc[j] != '"' && doc[j] != '\'')) return fail("unquoted attribute in <" + name + ">");
      const char quote = doc[j];
      const auto end = doc.find(quote, j + 1);
      if (end == std::string::npos) return fail("unterminated attribute value");
      if (doc.substr(j + 1, end - j - 1).find('<') != std::string::npos) return fail("< in attribute value");
      j = end + 1;
    }
    if (closing) {
      if (stack.empty() || stack.back() != name) return fail("mismatched </" + name + ">");
      stack.pop_back();
    } else if (!self_closing) {
      if (stack.empty()) ++roots;
      stack.push_back(name);
    } else if (stack.empty()) {
      ++roots;
    }
    i = j;
  }
  if (!stack.empty()) return fail("unclosed <" + stack.back() + ">");
  if (roots != 1) return fail("expected exactly one root element");
  return true;
}

/// Square point-robot world [0, size]^2 with the given box obstacles.
inline cspace::Scenario box_world(double size, const std::vector<std::array<double, 4>>& boxes,
                                  cspace::Configuration start, cspace::Configuration goal, double goal_radius) {
  cspace::Scenario s;
  s.name = "test_world";
  s.space = cspace::euclidean_space({{0.0, size}, {0.0, size}});
  s.robot = cspace::PointRobot{};
  for (const auto& b : boxes) {
    s.obstacles.emplace_back(cspace::Polygon{{b[0], b[1]}, {b[2], b[1]}, {b[2], b[3]}, {b[0], b[3]}});
  }
  s.start = start;
  s.goal = {goal, goal_radius};
  return s;
}

}  // namespace lbt::test
