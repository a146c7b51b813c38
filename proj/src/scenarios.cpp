#include "navsim/scenarios.hpp"

#include <charconv>
#include <optional>

#include "navsim/curriculum.hpp"
#include "navsim/error.hpp"
#include "navsim/rng.hpp"

namespace navsim {

namespace {

// Areas every builtin map keeps free of static obstacles.
const std::vector<ClearanceDisk>& scenario_areas() {
  static const std::vector<ClearanceDisk> areas{
      {{0.0, 0.0}, 3.5},    // arena: scenarios 1 and 3-9
      {{-8.0, -8.0}, 1.5},  // scenario 2 start
      {{8.0, 8.0}, 1.5},    // scenario 2 goal
  };
  return areas;
}

Polygon box(double x0, double y0, double x1, double y1) {
  return {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
}

MapModel realistic_map() {
  // Thin walls splitting the world into rooms connected by doorways.
  std::vector<Polygon> polys{
      box(-9.9, 4.9, -4.0, 5.1), box(-1.5, 4.9, 6.0, 5.1),   box(-6.0, -5.1, 1.5, -4.9),
      box(4.0, -5.1, 9.9, -4.9), box(4.9, -4.9, 5.1, 1.0),   box(-5.1, -1.0, -4.9, 4.9),
  };
  const MapModel clutter = generate_map(3003, 8, kDefaultBounds, scenario_areas());
  polys.insert(polys.end(), clutter.polygons().begin(), clutter.polygons().end());
  return MapModel("realistic", kDefaultBounds, std::move(polys));
}

EpisodeSpec base_spec(std::string_view map) {
  EpisodeSpec s;
  s.map.kind = MapSource::Kind::builtin;
  s.map.name = std::string(map);
  s.robot_spawn.random = false;
  s.robot_spawn.position = {-3.0, 0.0};
  s.goal.random = false;
  s.goal.position = {3.0, 0.0};
  s.n_agents = 0;
  s.agent_layout.kind = AgentLayout::Kind::scripted;
  s.max_steps = 500;
  s.jitter = 0.2;
  return s;
}

void script(EpisodeSpec& s, std::vector<ScriptedAgent> agents) {
  s.agent_layout.kind = AgentLayout::Kind::scripted;
  s.agent_layout.agents = std::move(agents);
  s.n_agents = static_cast<int>(s.agent_layout.agents.size());
}

}  // namespace

MapModel builtin_map(std::string_view name) {
  if (name == "simple") return generate_map(1001, 6, kDefaultBounds, scenario_areas(), "simple");
  if (name == "complex") return generate_map(2002, 20, kDefaultBounds, scenario_areas(), "complex");
  if (name == "realistic") return realistic_map();
  throw Error("schema", "map.name: unknown builtin map '" + std::string(name) + "'");
}

TestScenario make_scenario(std::string_view map, int number) {
  TestScenario sc;
  sc.number = number;
  sc.map = std::string(map);
  EpisodeSpec s = base_spec(map);

  switch (number) {
    case 1:
      s.robot_spawn.position = {-2.0, -2.0};
      s.goal.position = {2.0, -2.0};
      break;
    case 2:
      s.robot_spawn.position = {-8.0, -8.0};
      s.goal.position = {8.0, 8.0};
      s.n_agents = 3;
      s.agent_layout.kind = AgentLayout::Kind::random;
      s.max_steps = 1000;
      break;
    case 3: {
      std::vector<ScriptedAgent> crowd;
      for (double x : {-0.9, 0.0, 0.9}) {
        for (double y : {-1.35, -0.45, 0.45, 1.35}) {
          crowd.push_back({{x, y}, {x, y}, AgentPolicy::static_agent});
        }
      }
      script(s, std::move(crowd));
      break;
    }
    case 4:
      s.extra_obstacles = {box(-1.5, 0.5, 1.5, 3.0), box(-1.5, -3.0, 1.5, -0.5)};
      script(s, {{{2.5, 0.0}, {-2.5, 0.0}, AgentPolicy::orca}});
      break;
    case 5: {
      std::vector<ScriptedAgent> flow;
      for (double x : {-1.0, 0.0, 1.0}) flow.push_back({{x, -3.0}, {x, 3.0}, AgentPolicy::orca});
      for (double x : {-0.5, 0.5, 1.5}) flow.push_back({{x, 3.0}, {x, -3.0}, AgentPolicy::orca});
      script(s, std::move(flow));
      break;
    }
    case 6:
      // Pocket open towards +x; the robot approaches its closed back.
      s.extra_obstacles = {box(-0.6, -1.5, -0.3, 1.5), box(-0.3, 1.2, 1.8, 1.5),
                           box(-0.3, -1.5, 1.8, -1.2)};
      s.goal.position = {0.6, 0.0};
      break;
    case 7:
      s.robot_spawn.position = {-0.75, 0.0};
      s.robot_spawn.theta = 0.0;
      s.goal.position = {0.75, 0.0};
      s.max_steps = 300;
      break;
    case 8:
      s.robot_spawn.position = {-1.5, 0.0};
      s.goal.position = {1.5, 0.0};
      s.extra_obstacles = {box(-0.3, -0.2, 0.3, 0.4)};
      s.max_steps = 300;
      break;
    case 9:
      s.n_agents = 8;
      s.agent_layout.kind = AgentLayout::Kind::circle;
      s.agent_layout.radius = 2.0;
      s.agent_layout.center = Vec2{0.0, 0.0};
      s.max_steps = 300;
      break;
    default:
      throw Error("schema", "scenario number must be in 1..9");
  }
  s.name = sc.id();
  sc.spec = std::move(s);
  return sc;
}

std::vector<TestScenario> make_test_suite() {
  std::vector<TestScenario> suite;
  for (std::string_view map : kBuiltinMaps) {
    for (int n = 1; n <= 9; ++n) suite.push_back(make_scenario(map, n));
  }
  return suite;
}

std::vector<EpisodeSpec> make_validation_suite() {
  std::vector<EpisodeSpec> suite;
  suite.reserve(100);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    EpisodeSpec spec = make_curriculum_spec({kMaxCurriculumAgents, kMaxCurriculumPolygons}, seed);
    spec.name = "validation-" + std::to_string(seed);
    suite.push_back(std::move(spec));
  }
  return suite;
}

EpisodeSpec preset_spec(std::string_view name) {
  if (name == "train-curriculum") return make_curriculum_spec({0, 0}, 0);
  if (name == "validation") return make_validation_suite().front();
  auto number_after = [&](std::string_view prefix) -> std::optional<int> {
    if (!name.starts_with(prefix)) return std::nullopt;
    const std::string_view digits = name.substr(prefix.size());
    int v = 0;
    const auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
    if (digits.empty() || ec != std::errc{} || p != digits.data() + digits.size()) return std::nullopt;
    return v;
  };
  if (const auto k = number_after("validation-"); k && *k >= 0 && *k < 100) {
    return make_validation_suite()[static_cast<std::size_t>(*k)];
  }
  for (std::string_view map : kBuiltinMaps) {
    const std::string prefix = std::string(map) + "-";
    if (const auto n = number_after(prefix); n && *n >= 1 && *n <= 9) return make_scenario(map, *n).spec;
  }
  throw Error("usage", "unknown preset '" + std::string(name) + "'");
}

std::uint64_t suite_hash(const std::vector<EpisodeSpec>& suite) {
  std::string all;
  for (const EpisodeSpec& s : suite) all += spec_to_json(s);
  return fnv1a64(all);
}

}  // namespace navsim
