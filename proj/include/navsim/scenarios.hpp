#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "navsim/episode_spec.hpp"

namespace navsim {

/// Names accepted by builtin_map().
inline constexpr std::string_view kBuiltinMaps[] = {"simple", "complex", "realistic"};

/// Fixed test maps on a 20 x 20 m world: sparse random polygons, dense random
/// polygons, and a procedural stand-in for a real floor plan (thin walls with
/// doorways plus clutter). All keep the scenario areas free. Throws
/// Error{"schema"} for an unknown name.
MapModel builtin_map(std::string_view name);

struct TestScenario {
  int number = 0;     ///< 1..9
  std::string map;    ///< builtin map name
  std::string id() const { return map + "-" + std::to_string(number); }
  EpisodeSpec spec;
};

/// Scenario `number` (1..9) on a builtin map:
///  1 short free-path goal          4 narrow corridor          7 goal 1.5 m ahead, nothing between
///  2 long-range goal across map    5 crossing pedestrian flow 8 close goal, one obstacle between
///  3 dense static crowd            6 goal inside a pocket     9 agents on a circle, antipodal goals
TestScenario make_scenario(std::string_view map, int number);

/// 3 maps x 9 scenarios, map-major.
std::vector<TestScenario> make_test_suite();

/// 100 episodes at maximum curriculum difficulty, seeds 0..99.
std::vector<EpisodeSpec> make_validation_suite();

/// Named episode presets: "train-curriculum" (lowest difficulty),
/// "validation" or "validation-K" (K in 0..99), and test scenario ids such as
/// "complex-3". Throws Error{"usage"} for unknown names.
EpisodeSpec preset_spec(std::string_view name);

/// FNV-1a over the concatenated canonical JSON of the specs.
std::uint64_t suite_hash(const std::vector<EpisodeSpec>& suite);

}  // namespace navsim
