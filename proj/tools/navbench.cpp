#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "navsim/bench.hpp"
#include "navsim/dataset.hpp"
#include "navsim/error.hpp"
#include "navsim/eval.hpp"
#include "navsim/render.hpp"
#include "navsim/runner.hpp"
#include "navsim/scenarios.hpp"
#include "navsim/simd/kernels.hpp"

namespace {

using namespace navsim;

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

/// Replays actions read from a JSON-lines file, one [vx, vy, omega] per line.
class ActionListPolicy final : public Policy {
 public:
  explicit ActionListPolicy(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("io", path + ": cannot open actions file");
    std::string line;
    while (std::getline(in, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      const auto j = nlohmann::json::parse(line, nullptr, false);
      if (!j.is_array() || j.size() != 3 || !j[0].is_number() || !j[1].is_number() || !j[2].is_number()) {
        throw Error("usage", path + ": expected one [vx, vy, omega] array per line");
      }
      actions_.push_back(Action(j[0].get<double>(), j[1].get<double>(), j[2].get<double>()));
    }
  }
  void begin_episode(const Environment&) override { next_ = 0; }
  Action act(const Environment&, const Observation&) override {
    if (next_ >= actions_.size()) throw Error("policy", "actions file exhausted");
    return actions_[next_++];
  }

 private:
  std::vector<Action> actions_;
  std::size_t next_ = 0;
};

struct RunOptions {
  std::string preset;
  std::string scenario;
  std::string map = "procedural";
  int agents = 0;
  int polygons = 5;
  std::string policy = "orca";
  std::string actions;
  int episodes = 1;
  std::optional<std::uint64_t> seed;
  std::string record;
  std::string dump;
  std::string representation = "1d";
  int max_steps = 0;
};

EpisodeSpec base_run_spec(const RunOptions& o) {
  if (!o.preset.empty()) return preset_spec(o.preset);
  if (!o.scenario.empty()) return load_scenario(o.scenario);
  EpisodeSpec spec;
  spec.name = "run";
  spec.n_agents = o.agents;
  spec.agent_layout.kind = AgentLayout::Kind::random;
  if (o.map == "procedural") {
    spec.map.kind = MapSource::Kind::procedural;
    spec.map.n_polygons = o.polygons;
  } else if (o.map == "simple" || o.map == "complex" || o.map == "realistic") {
    spec.map.kind = MapSource::Kind::builtin;
    spec.map.name = o.map;
  } else {
    spec.map.kind = MapSource::Kind::file;
    spec.map.path = o.map;
  }
  return spec;
}

int cmd_run(const RunOptions& o) {
  EpisodeSpec base = base_run_spec(o);
  base.representation = o.representation == "rings" ? Representation::rings : Representation::lidar1d;
  if (o.max_steps > 0) base.max_steps = o.max_steps;
  std::unique_ptr<Policy> policy =
      o.actions.empty() ? make_policy(o.policy) : std::make_unique<ActionListPolicy>(o.actions);

  std::optional<std::ofstream> dump;
  if (!o.dump.empty()) {
    dump.emplace(o.dump);
    if (!*dump) throw Error("io", o.dump + ": cannot open for writing");
  }
  Dataset data;
  data.dt = static_cast<float>(base.kinematics.dt);
  std::vector<EpisodeSpec> specs;
  bool policy_failed = false;
  for (int e = 0; e < o.episodes; ++e) {
    EpisodeSpec spec = base;
    // Without --seed the first episode keeps the spec's own seed.
    if (o.seed) {
      spec.seed = derive_seed(*o.seed, static_cast<std::uint64_t>(e));
    } else if (e > 0) {
      spec.seed = derive_seed(base.seed, static_cast<std::uint64_t>(e));
    }
    EpisodeRecord ep;
    EpisodeHooks hooks;
    if (!o.record.empty()) hooks.record = &ep;
    if (dump) hooks.transcript = &*dump;
    const EpisodeSummary s = run_episode(spec, *policy, hooks);
    std::printf("episode=%d seed=%llu outcome=%s steps=%lld return=%.6f", e,
                static_cast<unsigned long long>(s.seed),
                s.policy_error ? "policy-error" : std::string(to_string(s.outcome)).c_str(),
                static_cast<long long>(s.steps), s.total_reward);
    if (s.policy_error) std::printf(" error=\"%s\"", s.policy_error->c_str());
    std::printf("\n");
    policy_failed = policy_failed || s.policy_error.has_value();
    if (!o.record.empty()) {
      data.episodes.push_back(std::move(ep));
      specs.push_back(spec);
    }
  }
  if (!o.record.empty()) {
    write_dataset(o.record, data);
    write_specs_sidecar(o.record, specs);
  }
  return policy_failed ? kExitRuntime : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"navbench: 2D LiDAR crowd-navigation simulator and benchmark"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string isa = "auto";
  app.add_option("--isa", isa, "Ray kernel: auto, scalar, avx2, neon")
      ->check(CLI::IsMember({"auto", "scalar", "avx2", "neon"}));

  RunOptions run;
  auto* c_run = app.add_subcommand("run", "Run episodes and print one outcome line per episode");
  auto* src = c_run->add_option_group("source");
  src->add_option("--preset", run.preset, "Preset: train-curriculum, validation-K, <map>-<n>");
  src->add_option("--scenario", run.scenario, "Scenario JSON file")->check(CLI::ExistingFile);
  src->add_option("--map", run.map, "procedural, simple, complex, realistic or a map JSON file");
  src->require_option(0, 1);
  c_run->add_option("--agents", run.agents, "Random agents (with --map)")->check(CLI::Range(0, 1000));
  c_run->add_option("--polygons", run.polygons, "Polygons (with --map procedural)")->check(CLI::Range(0, 1000));
  c_run->add_option("--policy", run.policy, "orca, straight, stop or cmd:<shell command>");
  c_run->add_option("--actions", run.actions, "Replay actions from a JSON-lines file")->check(CLI::ExistingFile);
  c_run->add_option("--episodes", run.episodes, "Number of episodes")->check(CLI::PositiveNumber);
  c_run->add_option("--seed", run.seed, "Base seed; episode e uses a seed derived from (seed, e)");
  c_run->add_option("--record", run.record, "Write episodes to this NRD1 file");
  c_run->add_option("--dump", run.dump, "Write a JSON-lines transcript");
  c_run->add_option("--representation", run.representation, "1d or rings")
      ->check(CLI::IsMember({"1d", "rings"}));
  c_run->add_option("--max-steps", run.max_steps, "Override the step limit")->check(CLI::NonNegativeNumber);

  BenchConfig bench;
  auto* c_bench = app.add_subcommand("bench", "Single-threaded stepping throughput");
  c_bench->add_option("--steps", bench.steps, "Steps to run")->check(CLI::PositiveNumber);
  c_bench->add_option("--agents", bench.agents, "Agents")->check(CLI::Range(0, 1000));
  c_bench->add_option("--polygons", bench.polygons, "Polygons")->check(CLI::Range(0, 1000));
  c_bench->add_option("--seed", bench.seed, "Seed");

  std::string suite = "builtin";
  std::string eval_policy = "orca";
  int eval_episodes = kDefaultEpisodesPerScenario;
  std::uint64_t eval_seed = 0;
  int eval_threads = 1;
  std::string eval_csv;
  auto* c_eval = app.add_subcommand("eval", "Evaluate a policy over a scenario suite");
  c_eval->add_option("--suite", suite, "builtin, a scenario directory or a scenario file");
  c_eval->add_option("--policy", eval_policy, "orca, straight, stop or cmd:<shell command>");
  c_eval->add_option("--episodes-per-scenario", eval_episodes, "Episodes per scenario")
      ->check(CLI::PositiveNumber);
  c_eval->add_option("--seed", eval_seed, "Base seed");
  c_eval->add_option("--threads", eval_threads, "Worker threads")->check(CLI::Range(1, 256));
  c_eval->add_option("--csv", eval_csv, "Write the report as CSV");

  std::string render_record_path;
  std::string render_out;
  std::string render_mode = "frames";
  auto* c_render = app.add_subcommand("render", "Render a record as PNG frames or SVG trajectories");
  c_render->add_option("--record", render_record_path, "NRD1 file")->required();
  c_render->add_option("--out", render_out, "Output directory")->required();
  c_render->add_option("--mode", render_mode, "frames or trajectory")
      ->check(CLI::IsMember({"frames", "trajectory"}));

  int maps_count = 1;
  int maps_polygons = 10;
  std::uint64_t maps_seed = 0;
  std::string maps_out;
  auto* c_maps = app.add_subcommand("gen-maps", "Generate random polygon maps as JSON");
  c_maps->add_option("--count", maps_count, "Number of maps")->check(CLI::PositiveNumber);
  c_maps->add_option("--polygons", maps_polygons, "Polygons per map")->check(CLI::Range(0, 1000));
  c_maps->add_option("--seed", maps_seed, "Seed");
  c_maps->add_option("--out", maps_out, "Output directory")->required();

  DatasetConfig ds;
  std::string ds_out;
  auto* c_ds = app.add_subcommand("gen-dataset", "Record ORCA-driven episodes for world-model training");
  c_ds->add_option("--steps", ds.total_steps, "Total steps to record")->required()->check(CLI::PositiveNumber);
  c_ds->add_option("--seed", ds.seed, "Seed");
  c_ds->add_option("--min-agents", ds.min_agents, "Fewest agents per episode")->check(CLI::Range(0, 1000));
  c_ds->add_option("--max-agents", ds.max_agents, "Most agents per episode")->check(CLI::Range(0, 1000));
  c_ds->add_option("--max-polygons", ds.max_polygons, "Most polygons per episode")->check(CLI::Range(0, 1000));
  c_ds->add_option("--max-steps", ds.max_steps, "Step limit per episode")->check(CLI::PositiveNumber);
  c_ds->add_option("--out", ds_out, "Output NRD1 file")->required();

  std::vector<std::string> cat_inputs;
  std::string cat_out;
  auto* c_cat = app.add_subcommand("concat", "Concatenate NRD1 files");
  c_cat->add_option("inputs", cat_inputs, "Input files")->required()->check(CLI::ExistingFile);
  c_cat->add_option("--out", cat_out, "Output NRD1 file")->required();

  std::string scen_out;
  auto* c_scen = app.add_subcommand("dump-scenarios", "Write the builtin test suite as scenario files");
  c_scen->add_option("--out", scen_out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (isa != "auto") {
      const simd::Isa want = isa == "scalar" ? simd::Isa::scalar : isa == "avx2" ? simd::Isa::avx2 : simd::Isa::neon;
      if (!simd::set_active_isa(want)) throw Error("usage", "kernel " + isa + " is not available on this CPU");
    }

    if (*c_run) return cmd_run(run);

    if (*c_bench) {
      const BenchResult r = run_bench(bench);
      std::printf("isa=%s agents=%d polygons=%d steps=%lld episodes=%d seconds=%.3f steps_per_s=%.1f hash=%016llx\n",
                  std::string(simd::isa_name(simd::active_kernels().isa)).c_str(), bench.agents,
                  bench.polygons, static_cast<long long>(r.steps), r.episodes, r.seconds,
                  r.steps_per_second, static_cast<unsigned long long>(r.output_hash));
      return 0;
    }

    if (*c_eval) {
      if (eval_episodes < kDefaultEpisodesPerScenario) {
        std::fprintf(stderr, "warning: %d episodes per scenario is below the %d-episode protocol\n",
                     eval_episodes, kDefaultEpisodesPerScenario);
      }
      make_policy(eval_policy);  // reject bad names before starting workers
      const auto entries = suite == "builtin" ? builtin_suite() : load_suite(suite);
      const EvalReport report = run_eval(
          entries, [&] { return make_policy(eval_policy); }, eval_episodes, eval_seed, eval_threads);
      std::fputs(report_table(report).c_str(), stdout);
      if (!eval_csv.empty()) {
        std::ofstream out(eval_csv);
        out << report_csv(report);
        if (!out) throw Error("io", eval_csv + ": write failed");
      }
      return 0;
    }

    if (*c_render) {
      const auto files = render_record(render_record_path, render_out, render_mode == "trajectory");
      std::printf("wrote %zu files to %s\n", files.size(), render_out.c_str());
      return 0;
    }

    if (*c_maps) {
      std::filesystem::create_directories(maps_out);
      for (int i = 0; i < maps_count; ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "map_%04d", i);
        const MapModel map = generate_map(derive_seed(maps_seed, static_cast<std::uint64_t>(i)),
                                          maps_polygons, kDefaultBounds, {}, name);
        save_map(map, std::filesystem::path(maps_out) / (std::string(name) + ".json"));
      }
      std::printf("wrote %d maps to %s\n", maps_count, maps_out.c_str());
      return 0;
    }

    if (*c_ds) {
      const Dataset data = generate_training_dataset(ds);
      write_dataset(ds_out, data);
      std::vector<EpisodeSpec> specs;
      for (std::size_t i = 0; i < data.episodes.size(); ++i) specs.push_back(dataset_episode_spec(ds, i));
      write_specs_sidecar(ds_out, specs);
      std::printf("wrote %llu steps in %zu episodes to %s\n", static_cast<unsigned long long>(ds.total_steps),
                  data.episodes.size(), ds_out.c_str());
      return 0;
    }

    if (*c_cat) {
      std::vector<std::filesystem::path> inputs(cat_inputs.begin(), cat_inputs.end());
      concat_datasets(inputs, cat_out);
      return 0;
    }

    if (*c_scen) {
      std::filesystem::create_directories(scen_out);
      for (const TestScenario& sc : make_test_suite()) {
        save_scenario(sc.spec, std::filesystem::path(scen_out) / (sc.id() + ".json"));
      }
      return 0;
    }
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return e.code() == "usage" ? kExitUsage : kExitRuntime;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitRuntime;
  }
  return 0;
}
