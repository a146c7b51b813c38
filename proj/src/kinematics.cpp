#include "navsim/kinematics.hpp"

#include <algorithm>
#include <cmath>

#include "navsim/error.hpp"

namespace navsim {

namespace {
double clamp_unit(double v) { return std::isnan(v) ? 0.0 : std::clamp(v, -1.0, 1.0); }
}  // namespace

Action::Action(double vx_, double vy_, double omega_)
    : vx(clamp_unit(vx_)), vy(clamp_unit(vy_)), omega(clamp_unit(omega_)) {}

void KinematicsConfig::validate() const {
  if (!(v_max > 0.0) || !(omega_max > 0.0) || !(tau > 0.0) || !(robot_radius > 0.0) ||
      !(dt > 0.0)) {
    throw Error("invalid-config", "kinematics v_max, omega_max, tau, robot_radius, dt must be > 0");
  }
}

BodyVelocity commanded_velocity(const Action& action, const KinematicsConfig& cfg) {
  BodyVelocity cmd{action.vx * cfg.v_max, action.vy * cfg.v_max, action.omega * cfg.omega_max};
  if (cfg.mode == DriveMode::diff_drive) cmd.vy = 0.0;
  const double speed = std::hypot(cmd.vx, cmd.vy);
  if (speed > cfg.v_max) {
    const double scale = cfg.v_max / speed;
    cmd.vx *= scale;
    cmd.vy *= scale;
  }
  return cmd;
}

RobotState step_robot(const RobotState& state, const Action& action, const KinematicsConfig& cfg) {
  const BodyVelocity cmd = commanded_velocity(action, cfg);
  BodyVelocity v = cmd;
  if (cfg.integration == Integration::first_order_lag) {
    const double alpha = std::min(1.0, cfg.dt / cfg.tau);
    v.vx = state.velocity.vx + (cmd.vx - state.velocity.vx) * alpha;
    v.vy = state.velocity.vy + (cmd.vy - state.velocity.vy) * alpha;
    v.omega = state.velocity.omega + (cmd.omega - state.velocity.omega) * alpha;
  }

  // Constant twist over dt: the chord of the arc has length |v| * 2 sin(w dt/2) / w
  // and points along the mid-step heading.
  const double half_turn = 0.5 * v.omega * cfg.dt;
  const double chord_scale = half_turn == 0.0 ? cfg.dt : cfg.dt * std::sin(half_turn) / half_turn;
  const Vec2 delta = rotate({v.vx, v.vy}, state.pose.theta + half_turn) * chord_scale;

  RobotState next;
  next.pose.x = state.pose.x + delta.x;
  next.pose.y = state.pose.y + delta.y;
  next.pose.theta = normalize_angle(state.pose.theta + v.omega * cfg.dt);
  next.velocity = v;
  return next;
}

Action action_for_world_velocity(const RobotState& state, const Vec2& world_velocity,
                                 const KinematicsConfig& cfg) {
  const Vec2 body = rotate(world_velocity, -state.pose.theta);
  return Action(body.x / cfg.v_max, body.y / cfg.v_max, 0.0);
}

}  // namespace navsim
