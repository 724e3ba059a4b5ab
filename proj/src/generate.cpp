#include "polymin/generate.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "polymin/errors.hpp"

namespace polymin {

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double phi = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(phi);
  has_spare_ = true;
  return r * std::cos(phi);
}

Point Rng::in_disk(double radius) {
  const double r = radius * std::sqrt(uniform());
  const double phi = 2.0 * std::numbers::pi * uniform();
  return {r * std::cos(phi), r * std::sin(phi)};
}

Polyline generate_brownian(std::size_t n, double sigma, std::uint64_t seed) {
  if (n < 2) throw InvalidParameter("brownian polyline needs n >= 2");
  if (!(sigma >= 0.0)) throw InvalidParameter("sigma must be non-negative");
  Rng rng(seed);
  std::vector<Point> pts(n);
  for (std::size_t i = 1; i < n; ++i) {
    const double gx = rng.normal();
    const double gy = rng.normal();
    pts[i] = pts[i - 1] + Point{gx, gy} * sigma;
  }
  return Polyline(std::move(pts));
}

Polyline generate_arc(double radius, double sweep_deg, std::size_t n, double noise_radius,
                      std::uint64_t seed) {
  if (n < 2) throw InvalidParameter("arc needs n >= 2");
  if (!(radius > 0.0)) throw InvalidParameter("radius must be positive");
  if (!(noise_radius >= 0.0)) throw InvalidParameter("noise radius must be non-negative");
  Rng rng(seed);
  const double sweep = sweep_deg * std::numbers::pi / 180.0;
  std::vector<Point> pts(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = sweep * static_cast<double>(i) / static_cast<double>(n - 1);
    pts[i] = Point{radius * std::cos(a), radius * std::sin(a)};
    if (noise_radius > 0.0) pts[i] = pts[i] + rng.in_disk(noise_radius);
  }
  return Polyline(std::move(pts));
}

}  // namespace polymin
