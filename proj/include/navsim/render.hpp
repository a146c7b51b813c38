#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "navsim/dataset.hpp"
#include "navsim/env.hpp"

namespace navsim {

/// 8-bit grayscale raster, row-major.
struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;
  std::uint8_t at(int x, int y) const { return pixels[static_cast<std::size_t>(y * width + x)]; }
  bool operator==(const GrayImage&) const = default;
};

namespace frame {
inline constexpr int kPanel = 256;             ///< each panel is kPanel x kPanel
inline constexpr int kRingsX0 = kPanel;        ///< rings panel occupies x >= kRingsX0
inline constexpr std::uint8_t kFreeGray = 255;
inline constexpr std::uint8_t kUnknownGray = 160;
inline constexpr std::uint8_t kOccupiedGray = 0;
inline constexpr double kScanViewRadius = 10.0;  ///< m shown from the robot to the panel edge
}  // namespace frame

/// Two panels side by side: the scan as beam endpoints around the robot
/// (robot frame, x to the right), and the rings grid with one row per
/// angular column and one column per radial bin, in three grays.
GrayImage render_frame(std::span<const float> ranges, const LidarConfig& lidar,
                       const RingsConfig& rings);

void write_png(const std::filesystem::path& path, const GrayImage& img);
GrayImage read_png(const std::filesystem::path& path);

inline constexpr const char* kSuccessColor = "#1f77b4";  ///< blue
inline constexpr const char* kFailureColor = "#ff7f0e";  ///< orange

struct Trajectory {
  std::vector<Vec2> robot;                ///< one point per step, reset included
  std::vector<std::vector<Vec2>> agents;  ///< per step
  Vec2 goal;
  Outcome outcome = Outcome::running;
};

/// Replays recorded actions on `spec`. Throws Error{"replay"} when the spec
/// hash differs from the record's.
Trajectory replay_trajectory(const EpisodeSpec& spec, const EpisodeRecord& record);

/// Map, agent positions as grey circles and the robot path, blue on success
/// and orange otherwise.
std::string trajectory_svg(const MapModel& map, const Trajectory& traj);

/// Specs of recorded episodes live next to the record in PATH.specs.json.
std::filesystem::path specs_sidecar(const std::filesystem::path& record);
void write_specs_sidecar(const std::filesystem::path& record, const std::vector<EpisodeSpec>& specs);
std::vector<EpisodeSpec> read_specs_sidecar(const std::filesystem::path& record);

/// Renders a record into `out_dir`: frame_EEEE_SSSSS.png per step, or
/// episode_EEEE.svg per episode. Returns the files written.
std::vector<std::filesystem::path> render_record(const std::filesystem::path& record,
                                                 const std::filesystem::path& out_dir,
                                                 bool trajectory);

}  // namespace navsim
