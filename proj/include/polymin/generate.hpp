#pragma once

#include <cstdint>
#include <random>

#include "polymin/geometry.hpp"

namespace polymin {

/// Seeded source of the synthetic generators. The engine is std::mt19937_64,
/// whose output sequence is fixed by the C++ standard; the conversions to
/// uniform and normal variates are implemented here rather than taken from
/// the implementation-defined <random> distributions, so a seed reproduces
/// the same polyline on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal via Box-Muller; the second variate is cached.
  double normal();
  /// Uniform point in the disk of the given radius.
  Point in_disk(double radius);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Random walk from the origin with N(0, sigma^2) increments per coordinate.
Polyline generate_brownian(std::size_t n, double sigma, std::uint64_t seed);

/// n points evenly spaced on an arc centred at the origin, starting at angle
/// 0, each displaced by a uniform point of the disk of radius noise_radius.
Polyline generate_arc(double radius, double sweep_deg, std::size_t n, double noise_radius,
                      std::uint64_t seed);

}  // namespace polymin
