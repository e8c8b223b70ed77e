#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "lbt/core/types.hpp"

namespace lbt::dynsp {

struct Arc {
  VertexId vertex;  // head for out-arcs, tail for in-arcs
  Cost weight;
};

/// Directed graph with forward and reverse adjacency and O(1) edge lookup.
/// No parallel edges; weights are finite and nonnegative.
class DynamicGraph {
 public:
  VertexId add_vertex() {
    out_.emplace_back();
    in_.emplace_back();
    return static_cast<VertexId>(out_.size() - 1);
  }

  void ensure_vertices(std::size_t n) {
    while (out_.size() < n) add_vertex();
  }

  [[nodiscard]] std::size_t vertex_count() const noexcept { return out_.size(); }
  [[nodiscard]] std::size_t edge_count() const noexcept { return weights_.size(); }

  [[nodiscard]] bool has_edge(VertexId u, VertexId v) const { return weights_.count(key(u, v)) != 0; }

  [[nodiscard]] std::optional<Cost> weight(VertexId u, VertexId v) const {
    auto it = weights_.find(key(u, v));
    if (it == weights_.end()) return std::nullopt;
    return it->second;
  }

  void insert_edge(VertexId u, VertexId v, Cost w) {
    check_vertex(u);
    check_vertex(v);
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument("edge weight must be finite and nonnegative");
    }
    if (!weights_.emplace(key(u, v), w).second) {
      throw std::invalid_argument("edge (" + std::to_string(u) + ", " + std::to_string(v) + ") already present");
    }
    out_[u].push_back({v, w});
    in_[v].push_back({u, w});
  }

  /// Removes (u, v) and returns its weight.
  Cost remove_edge(VertexId u, VertexId v) {
    auto it = weights_.find(key(u, v));
    if (it == weights_.end()) {
      throw std::invalid_argument("edge (" + std::to_string(u) + ", " + std::to_string(v) + ") not present");
    }
    const Cost w = it->second;
    weights_.erase(it);
    erase_arc(out_[u], v);
    erase_arc(in_[v], u);
    return w;
  }

  [[nodiscard]] std::span<const Arc> out_arcs(VertexId u) const { return out_.at(u); }
  [[nodiscard]] std::span<const Arc> in_arcs(VertexId v) const { return in_.at(v); }

 private:
  static std::uint64_t key(VertexId u, VertexId v) {
    return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint64_t>(v);
  }

  void check_vertex(VertexId v) const {
    if (v >= out_.size()) throw std::invalid_argument("vertex " + std::to_string(v) + " does not exist");
  }

  // Keeps the relative order of the remaining arcs.
  static void erase_arc(std::vector<Arc>& arcs, VertexId other) {
    for (auto it = arcs.begin(); it != arcs.end(); ++it) {
      if (it->vertex == other) {
        arcs.erase(it);
        return;
      }
    }
  }

  std::vector<std::vector<Arc>> out_;
  std::vector<std::vector<Arc>> in_;
  std::unordered_map<std::uint64_t, Cost> weights_;
};

}  // namespace lbt::dynsp
