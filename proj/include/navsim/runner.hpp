#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "navsim/dataset.hpp"
#include "navsim/env.hpp"
#include "navsim/policy.hpp"

namespace navsim {

struct EpisodeSummary {
  std::uint64_t seed = 0;
  std::uint64_t spec_hash = 0;
  Outcome outcome = Outcome::running;  ///< running only when cut short
  std::int64_t steps = 0;
  double total_reward = 0.0;
  std::optional<std::string> policy_error;  ///< episode aborted by the policy
};

struct EpisodeHooks {
  EpisodeRecord* record = nullptr;       ///< receives one StepRecord per step
  std::ostream* transcript = nullptr;    ///< JSON lines, see transcript_*_line
  std::int64_t step_budget = -1;         ///< stop after this many steps (< 0: no limit)
};

/// Actions cross every interface as 32-bit reals; the harness rounds before
/// applying so recorded actions replay exactly.
std::array<float, 3> quantize(const Action& a);
Action dequantize(const std::array<float, 3>& a);

/// Runs one episode of `spec` under `policy`. A policy failure ends the
/// episode with policy_error set instead of throwing.
EpisodeSummary run_episode(const EpisodeSpec& spec, Policy& policy, const EpisodeHooks& hooks = {});

/// {"step": 0, "s_l": [...], "s_r": [...]}
std::string transcript_reset_line(const Observation& obs);
/// {"step": k, "a": [...], "s_l": [...], "s_r": [...], "reward": {...},
///  "done": b, "outcome": "..."}
std::string transcript_step_line(const std::array<float, 3>& action, const StepResult& result);

}  // namespace navsim
