#include "navsim/bench.hpp"

#include <chrono>
#include <cstring>
#include <string_view>

#include "navsim/env.hpp"
#include "navsim/error.hpp"
#include "navsim/policy.hpp"
#include "navsim/rng.hpp"

namespace navsim {

namespace {

void mix(std::uint64_t& h, const void* data, std::size_t n) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
}

}  // namespace

BenchResult run_bench(const BenchConfig& cfg) {
  if (cfg.steps <= 0) throw Error("invalid-argument", "steps must be > 0");
  EpisodeSpec spec;
  spec.name = "bench";
  spec.map.kind = MapSource::Kind::procedural;
  spec.map.n_polygons = cfg.polygons;
  spec.n_agents = cfg.agents;
  spec.agent_layout.kind = AgentLayout::Kind::random;

  BenchResult r;
  r.output_hash = 0xcbf29ce484222325ULL;
  OrcaPolicy policy;
  const auto t0 = std::chrono::steady_clock::now();
  spec.seed = derive_seed(cfg.seed, 0);
  Environment env(spec);
  r.episodes = 1;
  Observation obs = env.observation();
  while (r.steps < cfg.steps) {
    if (env.done()) {
      spec.seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(r.episodes++));
      obs = env.reset(spec);
    }
    StepResult s = env.step(policy.act(env, obs));
    ++r.steps;
    mix(r.output_hash, s.observation.scan.ranges.data(), s.observation.scan.ranges.size() * sizeof(double));
    mix(r.output_hash, s.observation.s_r.data(), s.observation.s_r.size() * sizeof(double));
    mix(r.output_hash, &s.reward.total, sizeof(double));
    obs = std::move(s.observation);
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.steps_per_second = r.seconds > 0.0 ? static_cast<double>(r.steps) / r.seconds : 0.0;
  return r;
}

}  // namespace navsim
