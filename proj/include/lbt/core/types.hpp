#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

namespace lbt {

/// Path length in workspace units. Unreachable is +inf; IEEE addition
/// saturates there, which is the behavior the shortest-path code relies on.
using Cost = double;

inline constexpr Cost kInfiniteCost = std::numeric_limits<Cost>::infinity();

/// Dense vertex identifier, assigned in insertion order.
using VertexId = std::uint32_t;

inline constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Raised when sample_free exhausts its rejection budget.
class NoFreeSpaceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Seeded random stream. Every stochastic routine takes one explicitly so a
/// (scenario, params, seed) triple fully determines a run.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n) {
    std::uniform_int_distribution<std::uint64_t> dist(0, n - 1);
    return dist(engine_);
  }

  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace lbt
