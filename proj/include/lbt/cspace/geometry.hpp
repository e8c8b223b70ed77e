#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace lbt::cspace {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Vec2, Vec2) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

/// Closed polygon; the last vertex connects back to the first.
using Polygon = std::vector<Vec2>;

struct Box {
  Vec2 min;
  Vec2 max;

  [[nodiscard]] bool contains(Vec2 p) const {
    return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y;
  }
};

/// Sign of the turn a->b->c: +1 left, -1 right, 0 collinear.
inline int orientation(Vec2 a, Vec2 b, Vec2 c) {
  const double v = cross(b - a, c - a);
  return (v > 0.0) - (v < 0.0);
}

/// p on the closed segment ab, assuming collinearity.
inline bool on_segment(Vec2 a, Vec2 b, Vec2 p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

/// Closed segments: touching endpoints and collinear overlap both count.
inline bool segments_intersect(Vec2 p1, Vec2 p2, Vec2 q1, Vec2 q2) {
  const int o1 = orientation(p1, p2, q1);
  const int o2 = orientation(p1, p2, q2);
  const int o3 = orientation(q1, q2, p1);
  const int o4 = orientation(q1, q2, p2);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(p1, p2, q1)) return true;
  if (o2 == 0 && on_segment(p1, p2, q2)) return true;
  if (o3 == 0 && on_segment(q1, q2, p1)) return true;
  if (o4 == 0 && on_segment(q1, q2, p2)) return true;
  return false;
}

inline double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 ab = b - a;
  const double len2 = dot(ab, ab);
  double t = len2 > 0.0 ? dot(p - a, ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return norm(p - (a + t * ab));
}

inline bool on_boundary(const Polygon& poly, Vec2 p) {
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = poly[i];
    const Vec2 b = poly[(i + 1) % n];
    if (orientation(a, b, p) == 0 && on_segment(a, b, p)) return true;
  }
  return false;
}

/// Closed containment: boundary points count as inside.
inline bool point_in_polygon(const Polygon& poly, Vec2 p) {
  if (on_boundary(poly, p)) return true;
  bool inside = false;
  const std::size_t n = poly.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2 a = poly[i];
    const Vec2 b = poly[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x) inside = !inside;
    }
  }
  return inside;
}

/// Distance from p to the closed polygon region; zero inside.
inline double point_polygon_distance(const Polygon& poly, Vec2 p) {
  if (point_in_polygon(poly, p)) return 0.0;
  double best = INFINITY;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    best = std::min(best, point_segment_distance(p, poly[i], poly[(i + 1) % n]));
  }
  return best;
}

inline bool segment_hits_polygon(const Polygon& poly, Vec2 a, Vec2 b) {
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (segments_intersect(a, b, poly[i], poly[(i + 1) % n])) return true;
  }
  return point_in_polygon(poly, a) || point_in_polygon(poly, b);
}

/// Closed regions intersect (edge crossing/touching or containment).
inline bool polygons_intersect(const Polygon& p, const Polygon& q) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Vec2 a = p[i];
    const Vec2 b = p[(i + 1) % p.size()];
    for (std::size_t j = 0; j < q.size(); ++j) {
      if (segments_intersect(a, b, q[j], q[(j + 1) % q.size()])) return true;
    }
  }
  return point_in_polygon(q, p.front()) || point_in_polygon(p, q.front());
}

inline double signed_area(const Polygon& poly) {
  double a = 0.0;
  for (std::size_t i = 0, n = poly.size(); i < n; ++i) a += cross(poly[i], poly[(i + 1) % n]);
  return 0.5 * a;
}

/// At least three vertices, nonzero area, and no two non-adjacent edges meet.
inline bool is_simple(const Polygon& poly) {
  const std::size_t n = poly.size();
  if (n < 3 || signed_area(poly) == 0.0) return false;
  for (std::size_t i = 0; i < n; ++i) {
    if (poly[i] == poly[(i + 1) % n]) return false;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
      if (adjacent) continue;
      if (segments_intersect(poly[i], poly[(i + 1) % n], poly[j], poly[(j + 1) % n])) return false;
    }
  }
  return true;
}

inline Box bounding_box(const Polygon& poly) {
  Box b{{INFINITY, INFINITY}, {-INFINITY, -INFINITY}};
  for (Vec2 v : poly) {
    b.min.x = std::min(b.min.x, v.x);
    b.min.y = std::min(b.min.y, v.y);
    b.max.x = std::max(b.max.x, v.x);
    b.max.y = std::max(b.max.y, v.y);
  }
  return b;
}

/// Rigid transform of body-frame vertices: rotate by theta, then translate.
inline Polygon transformed(const Polygon& body, Vec2 translation, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Polygon out;
  out.reserve(body.size());
  for (Vec2 v : body) out.push_back({c * v.x - s * v.y + translation.x, s * v.x + c * v.y + translation.y});
  return out;
}

}  // namespace lbt::cspace
