#pragma once

#include "navsim/geometry.hpp"

namespace navsim {

/// Normalized command, each component clamped to [-1, 1] on construction.
struct Action {
  double vx = 0.0;
  double vy = 0.0;
  double omega = 0.0;

  Action() = default;
  Action(double vx_, double vy_, double omega_);
  bool operator==(const Action&) const = default;
};

enum class DriveMode { holonomic, diff_drive };
enum class Integration { instantaneous, first_order_lag };

struct KinematicsConfig {
  DriveMode mode = DriveMode::holonomic;
  Integration integration = Integration::instantaneous;
  double v_max = 1.0;         ///< m/s
  double omega_max = 1.0;     ///< rad/s
  double tau = 0.5;           ///< s, lag time constant
  double robot_radius = 0.3;  ///< m
  double dt = 0.2;            ///< s

  void validate() const;
  bool operator==(const KinematicsConfig&) const = default;
};

/// Velocity expressed in the robot frame.
struct BodyVelocity {
  double vx = 0.0;
  double vy = 0.0;
  double omega = 0.0;
  bool operator==(const BodyVelocity&) const = default;
};

struct RobotState {
  Pose pose;
  BodyVelocity velocity;

  /// Translational velocity in the world frame.
  Vec2 world_velocity() const { return rotate({velocity.vx, velocity.vy}, pose.theta); }
  bool operator==(const RobotState&) const = default;
};

/// Body velocity commanded by an action: components scaled by v_max and
/// omega_max, translational part clipped to norm v_max, vy zeroed for
/// differential drive.
BodyVelocity commanded_velocity(const Action& action, const KinematicsConfig& cfg);

/// Advances the robot by cfg.dt. The pose is integrated exactly along the
/// constant-twist arc.
RobotState step_robot(const RobotState& state, const Action& action, const KinematicsConfig& cfg);

/// Action whose command reproduces a desired world-frame velocity (no rotation).
Action action_for_world_velocity(const RobotState& state, const Vec2& world_velocity,
                                 const KinematicsConfig& cfg);

}  // namespace navsim
