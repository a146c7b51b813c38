#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "navsim/env.hpp"

namespace navsim {

// NRD1, little-endian.
//   header (32 bytes): "NRD1" | version u32 | n_episodes u64 | scan_dim u32 |
//                      sr_dim u32 | action_dim u32 | dt f32
//   per episode:       n_steps u64 | spec_hash u64 | n_steps step records
//   step record:       s_l f32[1080] | s_r f32[5] | a f32[3] | r f32 | done u8 |
//                      20 reserved zero bytes (4377 bytes in total)
inline constexpr std::uint32_t kNrdVersion = 1;
inline constexpr std::uint32_t kScanDim = 1080;
inline constexpr std::uint32_t kSrDim = 5;
inline constexpr std::uint32_t kActionDim = 3;
inline constexpr std::size_t kNrdHeaderBytes = 32;
inline constexpr std::size_t kEpisodeHeaderBytes = 16;
inline constexpr std::size_t kStepFieldBytes = (kScanDim + kSrDim + kActionDim + 1) * 4 + 1;
inline constexpr std::size_t kStepReservedBytes = 20;
inline constexpr std::size_t kStepRecordBytes = kStepFieldBytes + kStepReservedBytes;

/// One transition: observation before the action, the action, the reward it
/// earned and whether it ended the episode. s_l holds raw ranges in meters.
struct StepRecord {
  std::array<float, kScanDim> s_l{};
  std::array<float, kSrDim> s_r{};
  std::array<float, kActionDim> a{};
  float r = 0.0f;
  bool done = false;
  bool operator==(const StepRecord&) const = default;
};

struct EpisodeRecord {
  std::uint64_t spec_hash = 0;
  std::vector<StepRecord> steps;
  /// No terminal step: the episode was cut off by the recorder.
  bool truncated() const { return steps.empty() || !steps.back().done; }
  bool operator==(const EpisodeRecord&) const = default;
};

struct Dataset {
  float dt = 0.2f;
  std::vector<EpisodeRecord> episodes;
  bool operator==(const Dataset&) const = default;
};

struct ReadResult {
  Dataset data;
  /// Set when the file ends inside a record: "truncated at offset N", N being
  /// the first byte of the incomplete item. `data` then holds every complete
  /// step before it.
  std::optional<std::string> truncation;
  std::optional<std::uint64_t> truncated_at;
};

/// Exact file size for the given episode lengths.
std::uint64_t nrd_file_size(const std::vector<std::uint64_t>& steps_per_episode);

/// Writes and fsyncs. Throws Error{"invalid-record"} when a done flag appears
/// before the last step of an episode, Error{"io"} with path and offset on
/// I/O failure.
void write_dataset(const std::filesystem::path& path, const Dataset& data);

/// Throws Error{"io"} when unreadable, Error{"format"} on a bad header.
ReadResult read_dataset(const std::filesystem::path& path);

/// Appends episodes of `src` files to one file; all inputs must share dt.
void concat_datasets(const std::vector<std::filesystem::path>& inputs,
                     const std::filesystem::path& output);

/// StepRecord for the observation `obs`, then `action` and its outcome.
StepRecord make_step_record(const Observation& obs, const std::array<float, 3>& action,
                            double reward, bool done);

struct DatasetConfig {
  std::uint64_t total_steps = 0;
  std::uint64_t seed = 0;
  int min_agents = 5;
  int max_agents = 10;
  int max_polygons = 10;  ///< polygon count drawn uniformly in [0, max_polygons]
  int max_steps = 1000;   ///< per episode
};

/// Episode spec number `index` of a generated dataset.
EpisodeSpec dataset_episode_spec(const DatasetConfig& cfg, std::uint64_t index);

/// Runs ORCA-driven episodes until exactly cfg.total_steps steps are recorded
/// (the final episode may be truncated). Deterministic in cfg.
Dataset generate_training_dataset(const DatasetConfig& cfg);

}  // namespace navsim
