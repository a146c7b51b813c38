#include "navsim/curriculum.hpp"

#include <algorithm>

namespace navsim {

Difficulty Difficulty::clamped() const {
  return {std::clamp(n_agents, 0, kMaxCurriculumAgents),
          std::clamp(n_polygons, 0, kMaxCurriculumPolygons)};
}

Difficulty curriculum_update(const Difficulty& d, EpisodeResult result, Rng& rng) {
  const Difficulty cur = d.clamped();
  const int delta = result == EpisodeResult::success ? 1 : -1;
  const bool agents_first = rng.bernoulli(0.5);

  auto can_move_agents = [&] {
    const int n = cur.n_agents + delta;
    return n >= 0 && n <= kMaxCurriculumAgents;
  };
  auto can_move_polygons = [&] {
    const int n = cur.n_polygons + delta;
    return n >= 0 && n <= kMaxCurriculumPolygons;
  };

  Difficulty next = cur;
  if (agents_first) {
    if (can_move_agents()) {
      next.n_agents += delta;
    } else if (can_move_polygons()) {
      next.n_polygons += delta;
    }
  } else {
    if (can_move_polygons()) {
      next.n_polygons += delta;
    } else if (can_move_agents()) {
      next.n_agents += delta;
    }
  }
  return next;
}

EpisodeSpec make_curriculum_spec(const Difficulty& d, std::uint64_t seed) {
  const Difficulty c = d.clamped();
  EpisodeSpec spec;
  spec.name = "train-curriculum";
  spec.seed = seed;
  spec.map.kind = MapSource::Kind::procedural;
  spec.map.n_polygons = c.n_polygons;
  spec.map.bounds = kDefaultBounds;
  spec.n_agents = c.n_agents;
  spec.agent_layout.kind = AgentLayout::Kind::random;
  return spec;
}

}  // namespace navsim
