#include "navsim/orca.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace navsim {

namespace {

constexpr double kEpsilon = 1e-9;

// Optimizes along line `line_no` subject to lines [0, line_no) and the speed
// disk. Returns false when the feasible interval on the line is empty.
bool solve_on_line(std::span<const HalfPlane> lines, std::size_t line_no, double radius,
                   const Vec2& opt, bool direction_opt, Vec2& result) {
  const HalfPlane& line = lines[line_no];
  const double dot_product = dot(line.point, line.direction);
  const double discriminant = dot_product * dot_product + radius * radius - abs_sq(line.point);
  if (discriminant < 0.0) return false;  // speed disk misses the line

  const double sqrt_disc = std::sqrt(discriminant);
  double t_left = -dot_product - sqrt_disc;
  double t_right = -dot_product + sqrt_disc;

  for (std::size_t i = 0; i < line_no; ++i) {
    const double denominator = det(line.direction, lines[i].direction);
    const double numerator = det(lines[i].direction, line.point - lines[i].point);
    if (std::abs(denominator) <= kEpsilon) {
      if (numerator < 0.0) return false;  // parallel and excluded
      continue;
    }
    const double t = numerator / denominator;
    if (denominator >= 0.0) {
      t_right = std::min(t_right, t);
    } else {
      t_left = std::max(t_left, t);
    }
    if (t_left > t_right) return false;
  }

  if (direction_opt) {
    result = dot(opt, line.direction) > 0.0 ? line.point + t_right * line.direction
                                            : line.point + t_left * line.direction;
  } else {
    const double t = std::clamp(dot(line.direction, opt - line.point), t_left, t_right);
    result = line.point + t * line.direction;
  }
  return true;
}

// Returns the index of the first line that could not be satisfied, or
// lines.size() on success.
std::size_t solve_2d(std::span<const HalfPlane> lines, double radius, const Vec2& opt,
                     bool direction_opt, Vec2& result) {
  if (direction_opt) {
    result = opt * radius;
  } else if (abs_sq(opt) > radius * radius) {
    result = normalize(opt) * radius;
  } else {
    result = opt;
  }

  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].violation(result) > 0.0) {
      const Vec2 previous = result;
      if (!solve_on_line(lines, i, radius, opt, direction_opt, result)) {
        result = previous;
        return i;
      }
    }
  }
  return lines.size();
}

// Infeasible case: minimize the maximum violation of the agent lines starting
// at `begin`, keeping the first `n_obstacle` lines hard.
void solve_3d(std::span<const HalfPlane> lines, std::size_t n_obstacle, std::size_t begin,
              double radius, Vec2& result) {
  double distance = 0.0;
  for (std::size_t i = begin; i < lines.size(); ++i) {
    if (lines[i].violation(result) <= distance) continue;

    std::vector<HalfPlane> projected(lines.begin(),
                                     lines.begin() + static_cast<std::ptrdiff_t>(n_obstacle));
    for (std::size_t j = n_obstacle; j < i; ++j) {
      HalfPlane line;
      const double determinant = det(lines[i].direction, lines[j].direction);
      if (std::abs(determinant) <= kEpsilon) {
        if (dot(lines[i].direction, lines[j].direction) > 0.0) continue;  // same direction
        line.point = 0.5 * (lines[i].point + lines[j].point);
      } else {
        line.point = lines[i].point +
                     (det(lines[j].direction, lines[i].point - lines[j].point) / determinant) *
                         lines[i].direction;
      }
      line.direction = normalize(lines[j].direction - lines[i].direction);
      projected.push_back(line);
    }

    const Vec2 previous = result;
    const Vec2 opt{-lines[i].direction.y, lines[i].direction.x};
    if (solve_2d(projected, radius, opt, true, result) < projected.size()) {
      // Only reachable through rounding; the previous result is feasible.
      result = previous;
    }
    distance = lines[i].violation(result);
  }
}

HalfPlane agent_line(const OrcaBody& self, const OrcaBody& other, double inv_horizon, double dt) {
  const Vec2 rel_pos = other.position - self.position;
  const Vec2 rel_vel = self.velocity - other.velocity;
  const double dist_sq = abs_sq(rel_pos);
  const double combined = self.radius + other.radius;
  const double combined_sq = combined * combined;

  HalfPlane line;
  Vec2 u;
  if (dist_sq > combined_sq) {
    // w: from the cut-off circle center to the relative velocity.
    const Vec2 w = rel_vel - inv_horizon * rel_pos;
    const double w_len_sq = abs_sq(w);
    const double dot_product = dot(w, rel_pos);

    if (dot_product < 0.0 && dot_product * dot_product > combined_sq * w_len_sq) {
      // Closest boundary point lies on the cut-off circle.
      const double w_len = std::sqrt(w_len_sq);
      const Vec2 unit_w = w / w_len;
      line.direction = {unit_w.y, -unit_w.x};
      u = (combined * inv_horizon - w_len) * unit_w;
    } else {
      const double leg = std::sqrt(dist_sq - combined_sq);
      if (det(rel_pos, w) >= 0.0) {
        // Left leg; exact ties rotate left.
        line.direction = Vec2{rel_pos.x * leg - rel_pos.y * combined,
                              rel_pos.x * combined + rel_pos.y * leg} /
                         dist_sq;
      } else {
        line.direction = -Vec2{rel_pos.x * leg + rel_pos.y * combined,
                               -rel_pos.x * combined + rel_pos.y * leg} /
                         dist_sq;
      }
      u = dot(rel_vel, line.direction) * line.direction - rel_vel;
    }
  } else {
    // Overlapping: separate within one step.
    const double inv_dt = 1.0 / dt;
    const Vec2 w = rel_vel - inv_dt * rel_pos;
    const double w_len = norm(w);
    const Vec2 unit_w = w_len > 0.0 ? w / w_len : Vec2{-1.0, 0.0};
    line.direction = {unit_w.y, -unit_w.x};
    u = (combined * inv_dt - w_len) * unit_w;
  }
  line.point = self.velocity + 0.5 * u;
  return line;
}

}  // namespace

std::vector<std::size_t> select_neighbors(const OrcaBody& self, std::span<const OrcaBody> others,
                                          const OrcaParams& params) {
  const double range_sq = params.neighbor_dist * params.neighbor_dist;
  std::vector<std::pair<double, std::size_t>> in_range;
  for (std::size_t i = 0; i < others.size(); ++i) {
    const double d = abs_sq(others[i].position - self.position);
    if (d < range_sq) in_range.emplace_back(d, i);
  }
  std::sort(in_range.begin(), in_range.end());
  const auto keep = std::min(in_range.size(), static_cast<std::size_t>(std::max(0, params.max_neighbors)));
  std::vector<std::size_t> out;
  out.reserve(keep);
  for (std::size_t i = 0; i < keep; ++i) out.push_back(in_range[i].second);
  return out;
}

OrcaConstraints build_orca_constraints(const OrcaBody& self, std::span<const OrcaBody> neighbors,
                                       std::span<const Segment> obstacles,
                                       const OrcaParams& params, double dt) {
  OrcaConstraints out;

  // Obstacles: keep the body on the free side of the tangent line through the
  // closest point for the whole obstacle horizon.
  const double tau_obst = params.time_horizon_obstacles;
  const double reach = tau_obst * self.max_speed + self.radius;
  for (const Segment& seg : obstacles) {
    const Vec2 closest = closest_point_on_segment(self.position, seg.a, seg.b);
    const Vec2 away = self.position - closest;
    const double dist = norm(away);
    if (dist > reach) continue;
    Vec2 normal;
    if (dist > 0.0) {
      normal = away / dist;
    } else {
      const Vec2 e = normalize(seg.b - seg.a);
      normal = {e.y, -e.x};  // free side
    }
    // n . v >= bound
    const double bound = dist > self.radius ? (self.radius - dist) / tau_obst
                                            : (self.radius - dist) / dt;
    out.lines.push_back(HalfPlane{normal * bound, Vec2{normal.y, -normal.x}});
  }
  out.n_obstacle_lines = out.lines.size();

  const double inv_horizon = 1.0 / params.time_horizon_agents;
  for (const OrcaBody& other : neighbors) {
    out.lines.push_back(agent_line(self, other, inv_horizon, dt));
  }
  return out;
}

Vec2 solve_orca_lp(const OrcaConstraints& constraints, double max_speed, const Vec2& pref_velocity) {
  Vec2 result;
  const std::size_t failed = solve_2d(constraints.lines, max_speed, pref_velocity, false, result);
  if (failed < constraints.lines.size()) {
    solve_3d(constraints.lines, constraints.n_obstacle_lines, failed, max_speed, result);
  }
  // The disk constraint holds up to rounding; make it exact.
  double speed = norm(result);
  while (speed > max_speed) {
    result = result * (max_speed / speed) * (1.0 - 1e-15);
    speed = norm(result);
  }
  return result;
}

Vec2 orca_velocity(const OrcaBody& self, std::span<const OrcaBody> neighbors,
                   std::span<const Segment> obstacles, const OrcaParams& params,
                   const Vec2& pref_velocity, double dt) {
  std::vector<OrcaBody> chosen;
  for (std::size_t i : select_neighbors(self, neighbors, params)) chosen.push_back(neighbors[i]);
  return solve_orca_lp(build_orca_constraints(self, chosen, obstacles, params, dt),
                       self.max_speed, pref_velocity);
}

Vec2 preferred_velocity(const Vec2& position, const Vec2& goal, double speed, double dt) {
  const Vec2 d = goal - position;
  const double dist = norm(d);
  if (dist < 1e-12) return {};
  return d * (std::min(speed, dist / dt) / dist);
}

Vec2 keep_right(const Vec2& pref, const Vec2& current_velocity, double goal_distance,
                const Steering& steering) {
  if (goal_distance <= steering.min_goal_distance) return pref;
  if (norm(current_velocity) >= steering.stall_ratio * norm(pref)) return pref;
  return rotate(pref, -steering.stall_turn);
}

Vec2 steer_to_goal(const OrcaBody& self, std::span<const OrcaBody> neighbors,
                   std::span<const Segment> obstacles, const OrcaParams& params, const Vec2& goal,
                   double pref_speed, double dt, const Steering& steering) {
  OrcaBody me = self;
  me.radius += steering.safety_margin;
  std::vector<OrcaBody> others(neighbors.begin(), neighbors.end());
  for (OrcaBody& o : others) o.radius += steering.safety_margin;
  const Vec2 pref = keep_right(preferred_velocity(self.position, goal, pref_speed, dt),
                               self.velocity, norm(goal - self.position), steering);
  return orca_velocity(me, others, obstacles, params, pref, dt);
}

}  // namespace navsim
