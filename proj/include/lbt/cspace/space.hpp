#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lbt/core/types.hpp"

namespace lbt::cspace {

enum class CoordKind : std::uint8_t { Euclidean, Angular };

/// A point in configuration space. Fixed inline capacity; the owning
/// SpaceDefinition decides which coordinates are angular.
class Configuration {
 public:
  static constexpr std::size_t kMaxDimension = 8;

  Configuration() = default;

  Configuration(std::initializer_list<double> coords) {
    assign(std::span<const double>(coords.begin(), coords.size()));
  }

  explicit Configuration(std::span<const double> coords) { assign(coords); }

  explicit Configuration(std::size_t dimension) {
    if (dimension > kMaxDimension) {
      throw std::invalid_argument("configuration dimension exceeds capacity");
    }
    size_ = static_cast<std::uint8_t>(dimension);
  }

  [[nodiscard]] std::size_t size() const noexcept { return size_; }
  double& operator[](std::size_t i) noexcept { return coords_[i]; }
  double operator[](std::size_t i) const noexcept { return coords_[i]; }

  [[nodiscard]] std::span<const double> coords() const noexcept {
    return {coords_.data(), size_};
  }
  const double* begin() const noexcept { return coords_.data(); }
  const double* end() const noexcept { return coords_.data() + size_; }

  friend bool operator==(const Configuration&, const Configuration&) = default;

 private:
  void assign(std::span<const double> coords) {
    if (coords.size() > kMaxDimension) {
      throw std::invalid_argument("configuration dimension exceeds capacity");
    }
    std::copy(coords.begin(), coords.end(), coords_.begin());
    size_ = static_cast<std::uint8_t>(coords.size());
  }

  std::array<double, kMaxDimension> coords_{};
  std::uint8_t size_ = 0;
};

/// Maps an angle into [0, 2pi).
inline double normalize_angle(double theta) {
  double r = std::fmod(theta, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r == 0.0 ? 0.0 : r;  // folds -0.0
}

/// Signed shortest-arc difference b - a, in [-pi, pi].
inline double angle_difference(double a, double b) {
  double d = std::fmod(b - a, kTwoPi);
  if (d > kPi) d -= kTwoPi;
  if (d < -kPi) d += kTwoPi;
  return d;
}

struct CoordBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// Dimension, per-coordinate kind and bounds, and the angular weight used by
/// the metric (length units per radian).
struct SpaceDefinition {
  std::vector<CoordKind> kinds;
  std::vector<CoordBounds> bounds;  // ignored for angular coordinates
  double angular_weight = 1.0;

  [[nodiscard]] std::size_t dimension() const noexcept { return kinds.size(); }

  [[nodiscard]] bool is_angular(std::size_t i) const noexcept {
    return kinds[i] == CoordKind::Angular;
  }

  /// Index of the angular coordinate, or dimension() when there is none.
  [[nodiscard]] std::size_t angular_index() const noexcept {
    for (std::size_t i = 0; i < kinds.size(); ++i) {
      if (kinds[i] == CoordKind::Angular) return i;
    }
    return kinds.size();
  }

  void validate() const {
    if (kinds.size() < 2 || kinds.size() > Configuration::kMaxDimension) {
      throw std::invalid_argument("space dimension must be in [2, " +
                                  std::to_string(Configuration::kMaxDimension) + "]");
    }
    if (bounds.size() != kinds.size()) {
      throw std::invalid_argument("space needs one bound pair per coordinate");
    }
    std::size_t angular = 0;
    for (std::size_t i = 0; i < kinds.size(); ++i) {
      if (kinds[i] == CoordKind::Angular) {
        ++angular;
        continue;
      }
      const auto& b = bounds[i];
      if (!std::isfinite(b.lower) || !std::isfinite(b.upper) || !(b.lower < b.upper)) {
        throw std::invalid_argument("bounds of coordinate " + std::to_string(i) +
                                    " must be finite with lower < upper");
      }
    }
    if (angular > 1) throw std::invalid_argument("at most one angular coordinate is supported");
    if (!(angular_weight > 0.0) || !std::isfinite(angular_weight)) {
      throw std::invalid_argument("angular weight must be positive");
    }
  }

  /// Diagonal of the bounding box including the angular extent (pi * weight).
  [[nodiscard]] double diagonal() const {
    double s = 0.0;
    for (std::size_t i = 0; i < kinds.size(); ++i) {
      const double extent = is_angular(i) ? kPi * angular_weight : bounds[i].upper - bounds[i].lower;
      s += extent * extent;
    }
    return std::sqrt(s);
  }
};

/// Builds an all-Euclidean space over the given box.
inline SpaceDefinition euclidean_space(std::vector<CoordBounds> bounds) {
  SpaceDefinition s;
  s.kinds.assign(bounds.size(), CoordKind::Euclidean);
  s.bounds = std::move(bounds);
  return s;
}

/// Builds the (x, y, theta) space.
inline SpaceDefinition se2_space(CoordBounds x, CoordBounds y, double angular_weight) {
  SpaceDefinition s;
  s.kinds = {CoordKind::Euclidean, CoordKind::Euclidean, CoordKind::Angular};
  s.bounds = {x, y, {0.0, kTwoPi}};
  s.angular_weight = angular_weight;
  return s;
}

inline void require_same_dimension(const SpaceDefinition& space, const Configuration& q) {
  if (q.size() != space.dimension()) {
    throw std::invalid_argument("configuration has dimension " + std::to_string(q.size()) +
                                ", space has " + std::to_string(space.dimension()));
  }
}

/// True iff q has the space's dimension, finite coordinates and normalized angles.
inline bool is_valid(const SpaceDefinition& space, const Configuration& q) {
  if (q.size() != space.dimension()) return false;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (!std::isfinite(q[i])) return false;
    if (space.is_angular(i) && (q[i] < 0.0 || q[i] >= kTwoPi)) return false;
  }
  return true;
}

/// Wraps every angular coordinate into [0, 2pi).
inline Configuration normalized(const SpaceDefinition& space, Configuration q) {
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (space.is_angular(i)) q[i] = normalize_angle(q[i]);
  }
  return q;
}

/// Weighted metric: Euclidean on linear coordinates, shortest arc scaled by
/// the angular weight on the angular one. This is also the edge cost.
inline double distance(const SpaceDefinition& space, const Configuration& a, const Configuration& b) {
  require_same_dimension(space, a);
  require_same_dimension(space, b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = space.is_angular(i) ? space.angular_weight * angle_difference(a[i], b[i])
                                         : b[i] - a[i];
    s += d * d;
  }
  return std::sqrt(s);
}

/// Geodesic point at parameter t in [0, 1].
inline Configuration interpolate(const SpaceDefinition& space, const Configuration& a,
                                 const Configuration& b, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("interpolation parameter outside [0, 1]");
  require_same_dimension(space, a);
  require_same_dimension(space, b);
  if (t == 0.0) return a;
  if (t == 1.0) return b;
  Configuration out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (space.is_angular(i)) {
      out[i] = normalize_angle(a[i] + t * angle_difference(a[i], b[i]));
    } else {
      out[i] = a[i] + t * (b[i] - a[i]);
    }
  }
  return out;
}

/// Moves from `from` toward `toward` by at most eta along the geodesic.
inline Configuration steer(const SpaceDefinition& space, const Configuration& from,
                           const Configuration& toward, double eta) {
  if (!(eta > 0.0)) throw std::invalid_argument("steer step must be positive");
  const double d = distance(space, from, toward);
  if (d <= eta) return toward;
  return interpolate(space, from, toward, eta / d);
}

}  // namespace lbt::cspace
