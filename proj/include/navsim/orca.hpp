#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "navsim/geometry.hpp"

namespace navsim {

struct OrcaParams {
  double time_horizon_agents = 5.0;
  double time_horizon_obstacles = 1.0;
  double neighbor_dist = 10.0;
  int max_neighbors = 10;
  bool operator==(const OrcaParams&) const = default;
};

/// A disk-shaped participant as seen by ORCA.
struct OrcaBody {
  Vec2 position;
  Vec2 velocity;
  double radius = 0.3;
  double max_speed = 1.0;
};

/// Velocity constraint: feasible velocities lie on the left of `direction`
/// through `point`, i.e. det(direction, v - point) >= 0.
struct HalfPlane {
  Vec2 point;
  Vec2 direction;  ///< unit length

  double violation(const Vec2& v) const { return det(direction, point - v); }
};

struct OrcaConstraints {
  std::vector<HalfPlane> lines;  ///< obstacle lines first, then agent lines
  std::size_t n_obstacle_lines = 0;
};

/// Neighbors within neighbor_dist, nearest first (ties by index), capped at
/// max_neighbors.
std::vector<std::size_t> select_neighbors(const OrcaBody& self, std::span<const OrcaBody> others,
                                          const OrcaParams& params);

/// Builds the reciprocal half-planes for `self`. Agent constraints take half
/// the avoidance effort; obstacle segments take all of it. `dt` sets the
/// escape horizon when bodies already overlap.
OrcaConstraints build_orca_constraints(const OrcaBody& self, std::span<const OrcaBody> neighbors,
                                       std::span<const Segment> obstacles,
                                       const OrcaParams& params, double dt);

/// Incremental 2D LP: velocity within max_speed closest to pref_velocity
/// satisfying every line. When infeasible, the agent lines are relaxed to
/// minimize the largest violation while obstacle lines stay hard.
Vec2 solve_orca_lp(const OrcaConstraints& constraints, double max_speed, const Vec2& pref_velocity);

/// New collision-avoiding velocity for `self`. Neighbors beyond neighbor_dist
/// are ignored. Result norm never exceeds self.max_speed.
Vec2 orca_velocity(const OrcaBody& self, std::span<const OrcaBody> neighbors,
                   std::span<const Segment> obstacles, const OrcaParams& params,
                   const Vec2& pref_velocity, double dt);

/// Goal seeking layered on top of ORCA for simulated participants.
struct Steering {
  double safety_margin = 0.01;   ///< m added to every radius inside ORCA
  double stall_ratio = 0.2;      ///< stalled below this fraction of the preferred speed
  double stall_turn = 1.2;       ///< rad, clockwise
  double min_goal_distance = 0.5;
};

/// Velocity toward `goal` at `speed`, shortened to land on the goal in one step.
Vec2 preferred_velocity(const Vec2& position, const Vec2& goal, double speed, double dt);

/// Keep-right rule. Plain ORCA lets symmetric crowds settle into a ring where
/// everyone slows to a halt; a stalled participant far from its goal instead
/// prefers a direction turned clockwise by stall_turn, so the ring rotates
/// until each member faces open space.
Vec2 keep_right(const Vec2& pref, const Vec2& current_velocity, double goal_distance,
                const Steering& steering = {});

/// Preferred velocity, keep-right rule and ORCA with the safety margin.
Vec2 steer_to_goal(const OrcaBody& self, std::span<const OrcaBody> neighbors,
                   std::span<const Segment> obstacles, const OrcaParams& params, const Vec2& goal,
                   double pref_speed, double dt, const Steering& steering = {});

}  // namespace navsim
