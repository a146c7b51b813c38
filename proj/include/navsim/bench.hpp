#pragma once

#include <cstdint>

namespace navsim {

struct BenchConfig {
  std::int64_t steps = 1000;
  int agents = 5;
  int polygons = 10;
  std::uint64_t seed = 0;
};

struct BenchResult {
  std::int64_t steps = 0;
  int episodes = 0;
  double seconds = 0.0;
  double steps_per_second = 0.0;
  /// Hash of every observation and reward produced; independent of timing.
  std::uint64_t output_hash = 0;
};

/// Steps one environment (ORCA robot, full raycast, reward) on the calling
/// thread, starting a new episode whenever one ends.
BenchResult run_bench(const BenchConfig& cfg);

}  // namespace navsim
