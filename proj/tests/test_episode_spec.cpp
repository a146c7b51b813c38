#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <functional>

#include <json.hpp>

#include "navsim/episode_spec.hpp"
#include "navsim/error.hpp"
#include "navsim/scenarios.hpp"

using namespace navsim;

namespace {

std::string schema_message(const std::string& text) {
  try {
    spec_from_json(text);
  } catch (const Error& e) {
    CHECK(e.code() == "schema");
    return e.what();
  }
  return "";
}

std::string with(const EpisodeSpec& base, const std::function<void(nlohmann::json&)>& edit) {
  nlohmann::json j = nlohmann::json::parse(spec_to_json(base));
  edit(j);
  return j.dump();
}

}  // namespace

TEST_CASE("canonical JSON round trip is byte-stable") {
  std::vector<EpisodeSpec> specs;
  for (const TestScenario& t : make_test_suite()) specs.push_back(t.spec);
  for (const EpisodeSpec& s : make_validation_suite()) specs.push_back(s);
  EpisodeSpec rich = specs.front();
  rich.robot_spawn.theta.reset();
  rich.extra_obstacles.push_back({{0, 0}, {1, 0}, {0, 1}});
  rich.representation = Representation::rings;
  rich.render_mode = RenderMode::ellipse;
  rich.kinematics.mode = DriveMode::diff_drive;
  rich.kinematics.integration = Integration::first_order_lag;
  rich.collision_mode = CollisionMode::damage;
  rich.zero_rotation = true;
  rich.seed = 0xFFFFFFFFFFFFFFFFull;
  specs.push_back(rich);

  for (const EpisodeSpec& s : specs) {
    const std::string text = spec_to_json(s);
    const EpisodeSpec back = spec_from_json(text);
    CHECK(back == s);
    CHECK(spec_to_json(back) == text);
    CHECK(spec_hash(back) == spec_hash(s));
  }
}

TEST_CASE("scenario files load and save") {
  const auto dir = std::filesystem::temp_directory_path() / "navsim_spec_test";
  std::filesystem::create_directories(dir);
  const EpisodeSpec s = make_scenario("complex", 4).spec;
  save_scenario(s, dir / "s.json");
  CHECK(load_scenario(dir / "s.json") == s);
  std::ifstream in(dir / "s.json");
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(spec_to_json(spec_from_json(text)) == spec_to_json(s));
  try {
    load_scenario(dir / "missing.json");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == "io");
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("schema errors name the offending field") {
  const EpisodeSpec base = make_scenario("simple", 3).spec;
  CHECK(schema_message("{") .find("not valid JSON") != std::string::npos);
  CHECK(schema_message("[]").find("<root>") != std::string::npos);
  CHECK(schema_message(with(base, [](auto& j) { j.erase("seed"); })).find("seed: missing field") !=
        std::string::npos);
  CHECK(schema_message(with(base, [](auto& j) { j["spec_version"] = 2; })).find("spec_version") !=
        std::string::npos);
  CHECK(schema_message(with(base, [](auto& j) { j["map"]["type"] = "moon"; })).find("map.type") !=
        std::string::npos);
  CHECK(schema_message(with(base, [](auto& j) { j["kinematics"]["v_max"] = "fast"; }))
            .find("kinematics.v_max") != std::string::npos);
  CHECK(schema_message(with(base, [](auto& j) { j["agent_layout"]["agents"][1]["position"] = 3; }))
            .find("agent_layout.agents[1].position") != std::string::npos);
  CHECK(schema_message(with(base, [](auto& j) { j["n_agents"] = -1; })).find("n_agents") !=
        std::string::npos);
  CHECK(schema_message(with(base, [](auto& j) { j["max_steps"] = 0; })).find("max_steps") !=
        std::string::npos);
}

TEST_CASE("spec hash distinguishes specs") {
  EpisodeSpec a = make_scenario("simple", 1).spec;
  EpisodeSpec b = a;
  b.seed += 1;
  CHECK(spec_hash(a) != spec_hash(b));
  CHECK(spec_hash(a) == spec_hash(make_scenario("simple", 1).spec));
}
