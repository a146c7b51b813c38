#pragma once

#include <cstdint>

#include "navsim/episode_spec.hpp"
#include "navsim/rng.hpp"

namespace navsim {

inline constexpr int kMaxCurriculumAgents = 5;
inline constexpr int kMaxCurriculumPolygons = 10;

struct Difficulty {
  int n_agents = 0;
  int n_polygons = 0;

  /// Clamped to [0, 5] x [0, 10].
  Difficulty clamped() const;
  bool operator==(const Difficulty&) const = default;
};

enum class EpisodeResult { success, failure };

/// One curriculum step: success raises, failure lowers, either the agent or
/// the polygon count (fair coin). When the drawn dimension is saturated the
/// other one moves instead; when both are, nothing changes.
Difficulty curriculum_update(const Difficulty& d, EpisodeResult result, Rng& rng);

/// Training episode at a given difficulty: procedural map, random spawn,
/// goal and agents.
EpisodeSpec make_curriculum_spec(const Difficulty& d, std::uint64_t seed);

}  // namespace navsim
