#pragma once

#include <Eigen/Core>
#include <cmath>
#include <cstdint>
#include <string_view>

namespace prequant {

/// Counter-based deterministic generator (splitmix64 over a keyed counter).
/// Substreams derived by name are independent of the order in which they are
/// drawn from, which keeps per-check randomness stable when checks are
/// reordered or run concurrently.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(mix(seed ^ 0x9e3779b97f4a7c15ull) ^ mix(stream)), counter_(0) {}

  std::uint64_t next_u64() {
    return mix(key_ + 0x9e3779b97f4a7c15ull * ++counter_);
  }

  /// Uniform double in [0, 1).
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller (no state caching: deterministic).
  double normal() {
    double u1 = uniform();
    double u2 = uniform();
    while (u1 <= 1e-300) u1 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

  Eigen::Vector3d unit_vector3() {
    Eigen::Vector3d v;
    do {
      v = Eigen::Vector3d(normal(), normal(), normal());
    } while (v.norm() < 1e-8);
    return v.normalized();
  }

  Eigen::Vector2d unit_vector2() {
    const double a = uniform(0.0, 6.283185307179586);
    return Eigen::Vector2d(std::cos(a), std::sin(a));
  }

  /// Derive an independent substream keyed by a label.
  Rng stream(std::string_view name) const {
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a
    for (char c : name) {
      h ^= static_cast<std::uint64_t>(static_cast<unsigned char>(c));
      h *= 1099511628211ull;
    }
    return Rng(key_, h);
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t counter_;
};

}  // namespace prequant
