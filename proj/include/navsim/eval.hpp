#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "navsim/policy.hpp"
#include "navsim/scenarios.hpp"

namespace navsim {

inline constexpr int kDefaultEpisodesPerScenario = 300;

struct SuiteEntry {
  std::string scenario_id;
  std::string map;
  EpisodeSpec spec;  ///< seed is replaced per episode
};

std::vector<SuiteEntry> builtin_suite();

/// A directory of scenario files (sorted by name) or a single scenario file.
std::vector<SuiteEntry> load_suite(const std::filesystem::path& path);

struct EvalRow {
  std::string scenario_id;
  std::string map;
  int episodes = 0;
  int successes = 0;
  int collisions = 0;
  int timeouts = 0;
  int policy_errors = 0;
  double success_rate() const { return episodes ? static_cast<double>(successes) / episodes : 0.0; }
  double collision_rate() const { return episodes ? static_cast<double>(collisions) / episodes : 0.0; }
  double timeout_rate() const { return episodes ? static_cast<double>(timeouts) / episodes : 0.0; }
  bool operator==(const EvalRow&) const = default;
};

struct EvalReport {
  std::vector<EvalRow> rows;
  double mean_success_rate() const;
  double mean_collision_rate() const;
  double mean_timeout_rate() const;
  bool operator==(const EvalReport&) const = default;
};

using PolicyFactory = std::function<std::unique_ptr<Policy>()>;

/// Seed of episode `episode` of suite entry `entry`.
std::uint64_t eval_episode_seed(std::uint64_t seed, std::size_t entry, int episode);

/// Runs `episodes` episodes of every entry. Work is sharded over `threads`
/// workers, each with its own policy; the report does not depend on the
/// thread count.
EvalReport run_eval(const std::vector<SuiteEntry>& suite, const PolicyFactory& make_policy,
                    int episodes, std::uint64_t seed, int threads = 1);

/// Header: scenario_id,map,episodes,successes,collisions,timeouts,policy_errors,
/// success_rate,collision_rate,timeout_rate. Rates print with round-trip precision.
std::string report_csv(const EvalReport& report);
/// Throws Error{"format"} on malformed input or inconsistent rates.
EvalReport parse_report_csv(const std::string& csv);
std::string report_table(const EvalReport& report);

}  // namespace navsim
