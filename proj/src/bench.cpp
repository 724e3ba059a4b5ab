#include "polymin/bench.hpp"

#include <chrono>
#include <cmath>
#include <map>

#include "polymin/errors.hpp"
#include "polymin/generate.hpp"

namespace polymin {

std::vector<BenchRecord> bench(std::span<const std::size_t> sizes, const SolveConfig& cfg,
                               std::span<const std::uint64_t> seeds, double sigma) {
  std::vector<BenchRecord> out;
  for (const std::size_t n : sizes) {
    for (const std::uint64_t seed : seeds) {
      const Polyline poly = generate_brownian(n, sigma, seed);
      const auto t0 = std::chrono::steady_clock::now();
      const CompressedResult r = solve(poly, cfg);
      const auto t1 = std::chrono::steady_clock::now();
      out.push_back({n, std::chrono::duration<double>(t1 - t0).count(), r.polyline.size(), "free",
                     cfg.tolerance, seed});
    }
  }
  return out;
}

std::string bench_csv(std::span<const BenchRecord> records) {
  std::string out = "n,seconds,output_vertices,mode,tolerance,seed\n";
  char buf[256];
  for (const auto& r : records) {
    std::snprintf(buf, sizeof buf, "%zu,%.6f,%zu,%s,%.17g,%llu\n", r.n, r.seconds,
                  r.output_vertices, r.mode.c_str(), r.tolerance,
                  static_cast<unsigned long long>(r.seed));
    out += buf;
  }
  return out;
}

double loglog_slope(std::span<const BenchRecord> records) {
  std::map<std::size_t, std::pair<double, int>> by_n;
  for (const auto& r : records) {
    auto& [sum, count] = by_n[r.n];
    sum += r.seconds;
    ++count;
  }
  if (by_n.size() < 2) throw InvalidParameter("slope needs at least two distinct sizes");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(by_n.size());
  for (const auto& [n, acc] : by_n) {
    const double x = std::log(static_cast<double>(n));
    const double y = std::log(acc.first / acc.second);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace polymin
