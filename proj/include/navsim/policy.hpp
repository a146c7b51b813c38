#pragma once

#include <chrono>
#include <memory>
#include <string>
#include <string_view>

#include "navsim/env.hpp"

namespace navsim {

/// Maps the current observation to an action. One instance drives one
/// environment at a time.
class Policy {
 public:
  virtual ~Policy() = default;
  virtual void begin_episode(const Environment&) {}
  /// Throws Error{"policy"} when no valid action can be produced.
  virtual Action act(const Environment& env, const Observation& obs) = 0;
};

/// Holds still.
class StopPolicy final : public Policy {
 public:
  Action act(const Environment&, const Observation&) override { return {}; }
};

/// Full speed along the straight line to the goal, ignoring obstacles.
class StraightPolicy final : public Policy {
 public:
  Action act(const Environment& env, const Observation& obs) override;
};

/// The robot as one more ORCA agent: preferred velocity towards the goal,
/// every agent a neighbor, map edges as obstacles.
class OrcaPolicy final : public Policy {
 public:
  Action act(const Environment& env, const Observation& obs) override;
};

/// External policy speaking JSON lines over the standard streams of a child
/// process started with /bin/sh -c. Request:
///   {"s_l": [...], "s_r": [...], "step": k}
/// Reply, one line per request:
///   {"a": [vx, vy, omega]}
class SubprocessPolicy final : public Policy {
 public:
  explicit SubprocessPolicy(std::string command,
                            std::chrono::milliseconds timeout = std::chrono::seconds(30));
  ~SubprocessPolicy() override;
  SubprocessPolicy(const SubprocessPolicy&) = delete;
  SubprocessPolicy& operator=(const SubprocessPolicy&) = delete;

  Action act(const Environment& env, const Observation& obs) override;

 private:
  void start();
  void stop();
  std::string read_line();

  std::string command_;
  std::chrono::milliseconds timeout_;
  int pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  std::string buffer_;
};

/// Action for a world-frame velocity request that respects the drive mode:
/// holonomic bases translate directly, differential drives turn towards it.
Action track_world_velocity(const RobotState& robot, const Vec2& velocity,
                            const KinematicsConfig& cfg);

/// Request line sent to external policies (no trailing newline).
std::string policy_request(const Observation& obs, std::int64_t step);

/// Parses a reply line; components are clamped to [-1, 1]. Throws
/// Error{"policy"} on malformed input.
Action parse_policy_reply(std::string_view line);

/// "orca", "straight", "stop" or "cmd:<shell command>". Throws
/// Error{"usage"} for anything else.
std::unique_ptr<Policy> make_policy(std::string_view name);

}  // namespace navsim
