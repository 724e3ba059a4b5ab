#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "polymin/compressor.hpp"

namespace polymin {

struct BenchRecord {
  std::size_t n = 0;
  double seconds = 0.0;
  std::size_t output_vertices = 0;
  std::string mode = "free";
  double tolerance = 0.0;
  std::uint64_t seed = 0;
};

/// Times `solve` on a Brownian polyline for every (size, seed) pair.
std::vector<BenchRecord> bench(std::span<const std::size_t> sizes, const SolveConfig& cfg,
                               std::span<const std::uint64_t> seeds, double sigma = 0.25);

/// Header line plus one line per record.
std::string bench_csv(std::span<const BenchRecord> records);

/// Least-squares slope of log(mean seconds) against log(n), one point per
/// distinct n.
double loglog_slope(std::span<const BenchRecord> records);

}  // namespace polymin
