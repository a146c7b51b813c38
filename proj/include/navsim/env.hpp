#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "navsim/collision.hpp"
#include "navsim/episode_spec.hpp"
#include "navsim/rng.hpp"

namespace navsim {

inline constexpr double kSuccessReward = 100.0;
inline constexpr double kCollisionReward = -25.0;
inline constexpr double kDangerReward = -1.0;
inline constexpr double kDangerClearance = 0.2;  ///< m, surface to surface
inline constexpr double kGoalRadius = 0.5;       ///< m

struct RewardBreakdown {
  double r_s = 0.0;  ///< success
  double r_c = 0.0;  ///< collision
  double r_d = 0.0;  ///< danger
  double r_p = 0.0;  ///< progress
  double total = 0.0;
  bool operator==(const RewardBreakdown&) const = default;
};

RewardBreakdown compute_reward(double prev_dist_goal, double new_dist_goal, bool reached,
                               bool collided, double min_clearance);

enum class Outcome { running, success, collision, timeout };
std::string_view to_string(Outcome o);

struct Observation {
  Scan scan;                 ///< raw ranges in meters
  Representation representation = Representation::lidar1d;
  std::vector<float> s_l;    ///< normalized 1D vector or flattened rings grid
  /// Goal in the robot frame (x, y) then body velocities (vx, vy, omega).
  std::array<double, 5> s_r{};
  bool operator==(const Observation& o) const {
    return scan.ranges == o.scan.ranges && scan.timestamp_step == o.scan.timestamp_step &&
           representation == o.representation && s_l == o.s_l && s_r == o.s_r;
  }
};

struct StepInfo {
  double min_clearance = 0.0;
  double distance_to_goal = 0.0;
  std::int64_t step = 0;
  ContactKind contact = ContactKind::none;
};

struct StepResult {
  Observation observation;
  RewardBreakdown reward;
  bool done = false;
  Outcome outcome = Outcome::running;
  StepInfo info;
};

/// One episode of the navigation task.
///
/// Owns its map, robot and agents; single-threaded. Distinct instances
/// share nothing and may run on separate threads.
class Environment {
 public:
  /// Builds the episode described by `spec` (same as calling reset()).
  explicit Environment(const EpisodeSpec& spec);

  /// Rebuilds the world from `spec` and returns the first observation.
  /// Throws Error{"placement-exhausted"} when spawns cannot be placed.
  const Observation& reset(const EpisodeSpec& spec);

  /// Advances one tick: agents, gait, robot, collision, goal, timeout,
  /// reward, scan. Throws ContractViolation once the episode is done.
  StepResult step(const Action& action);

  const EpisodeSpec& spec() const { return spec_; }
  const MapModel& map() const { return map_; }
  const RobotState& robot() const { return robot_; }
  const std::vector<HumanAgent>& agents() const { return agents_; }
  const Vec2& goal() const { return goal_; }
  const Observation& observation() const { return observation_; }
  std::int64_t step_index() const { return step_; }
  bool done() const { return outcome_ != Outcome::running; }
  Outcome outcome() const { return outcome_; }

  /// Circles currently visible to the LiDAR (agent legs or ellipses).
  std::vector<Circle> dynamic_circles() const;

  /// Robot as an ORCA participant (world-frame velocity).
  OrcaBody robot_body() const;

 private:
  void place_agents(Rng& rng);
  void advance_agents();
  Observation make_observation() const;

  EpisodeSpec spec_;
  MapModel map_;
  RobotState robot_;
  Vec2 goal_;
  std::vector<HumanAgent> agents_;
  std::vector<Vec2> agent_origins_;  ///< patrol endpoints (random layout)
  std::int64_t step_ = 0;
  Outcome outcome_ = Outcome::running;
  double prev_dist_goal_ = 0.0;
  Observation observation_;
};

/// Map referenced by an episode spec (procedural maps need the spawn points).
MapModel build_map(const EpisodeSpec& spec, std::span<const ClearanceDisk> clearance);

}  // namespace navsim
