#pragma once

#include <optional>
#include <span>
#include <vector>

#include "navsim/geometry.hpp"

namespace navsim {

/// Polar grid layout: even angular columns, exponentially spaced radial bins
/// with edges e_k = r_min * (r_max / r_min)^(k / n_radial).
struct RingsConfig {
  int n_angular = 64;
  int n_radial = 64;
  double r_min = 0.3;
  double r_max = 25.0;

  void validate() const;
  /// n_radial + 1 bin edges.
  std::vector<double> edges() const;
  bool operator==(const RingsConfig&) const = default;
};

namespace rings {
inline constexpr float kFree = 0.0f;
inline constexpr float kUnknown = 0.5f;
inline constexpr float kOccupied = 1.0f;
}  // namespace rings

/// n_angular x n_radial cells, angular-major: cell(a, r) = cells[a * n_radial + r].
struct RingsGrid {
  int n_angular = 0;
  int n_radial = 0;
  std::vector<float> cells;

  float at(int angular, int radial) const { return cells[static_cast<std::size_t>(angular * n_radial + radial)]; }
  bool operator==(const RingsGrid&) const = default;
};

/// ranges[i] / max_range.
std::vector<float> normalize_1d(const Scan& scan, double max_range);

/// Radial bin of a distance, or nullopt when distance >= r_max. Bins are
/// half-open [e_k, e_{k+1}); distances below r_min fall in bin 0.
std::optional<int> radial_bin(double distance, const RingsConfig& cfg);

/// Angular column of each beam of a scan taken with `lidar`.
std::vector<int> beam_columns(const LidarConfig& lidar, const RingsConfig& cfg);

/// Encodes a scan as free / occupied / unknown cells. Each column takes the
/// minimum range of its beams; columns without beams stay unknown.
RingsGrid rings_encode(const Scan& scan, const LidarConfig& lidar, const RingsConfig& cfg);

/// Observation-shaped prediction from a world model.
struct PredictedState {
  std::vector<double> s_l;  ///< flattened LiDAR state (1D or rings)
  std::vector<double> s_r;  ///< 5 components
};

struct WorldModelError {
  double lidar = 0.0;
  double goal_velocity = 0.0;
};

/// Mean squared next-step prediction error, separately for the LiDAR state
/// and the goal/velocity state. Throws Error{"shape-mismatch"} when lengths
/// or element counts differ.
WorldModelError worldmodel_error(std::span<const PredictedState> predicted,
                                 std::span<const PredictedState> truth);

}  // namespace navsim
