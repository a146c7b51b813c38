#include "navsim/env.hpp"

#include <algorithm>
#include <cmath>

#include "navsim/error.hpp"
#include "navsim/rng.hpp"
#include "navsim/scenarios.hpp"

namespace navsim {

namespace {

constexpr int kPlacementAttempts = 1000;
constexpr double kSpawnClearanceRadius = 1.0;  // procedural maps keep this free
constexpr double kSpawnMargin = 1.0;           // from the wall, random spawns
constexpr double kMinGoalDistance = 2.0;
constexpr double kPatrolTolerance = 0.3;

Vec2 sample_in(Rng& rng, const Rect& b, double margin) {
  const double x = rng.uniform(b.xmin + margin, b.xmax - margin);
  const double y = rng.uniform(b.ymin + margin, b.ymax - margin);
  return {x, y};
}

Vec2 jittered(Rng& rng, const Vec2& p, double jitter) {
  if (jitter <= 0.0) return p;
  const double r = jitter * std::sqrt(rng.uniform());
  const double a = rng.uniform(0.0, kTwoPi);
  return p + Vec2{std::cos(a), std::sin(a)} * r;
}

[[noreturn]] void exhausted(const std::string& what) {
  throw Error("placement-exhausted",
              "could not place " + what + " after " + std::to_string(kPlacementAttempts) + " attempts");
}

}  // namespace

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::running:
      return "running";
    case Outcome::success:
      return "success";
    case Outcome::collision:
      return "collision";
    case Outcome::timeout:
      return "timeout";
  }
  return "running";
}

RewardBreakdown compute_reward(double prev_dist_goal, double new_dist_goal, bool reached,
                               bool collided, double min_clearance) {
  RewardBreakdown r;
  r.r_s = reached ? kSuccessReward : 0.0;
  r.r_c = collided ? kCollisionReward : 0.0;
  r.r_d = min_clearance < kDangerClearance ? kDangerReward : 0.0;
  r.r_p = prev_dist_goal - new_dist_goal;
  r.total = r.r_s + r.r_c + r.r_d + r.r_p;
  return r;
}

MapModel build_map(const EpisodeSpec& spec, std::span<const ClearanceDisk> clearance) {
  MapModel base = [&] {
    switch (spec.map.kind) {
      case MapSource::Kind::procedural:
        return generate_map(derive_seed(spec.seed, 1), spec.map.n_polygons, spec.map.bounds,
                            clearance);
      case MapSource::Kind::file:
        return load_map(spec.map.path);
      case MapSource::Kind::builtin:
        return builtin_map(spec.map.name);
    }
    throw Error("schema", "map.type: unknown");
  }();
  if (spec.extra_obstacles.empty()) return base;
  std::vector<Polygon> polys = base.polygons();
  polys.insert(polys.end(), spec.extra_obstacles.begin(), spec.extra_obstacles.end());
  return MapModel(base.name(), base.bounds(), std::move(polys));
}

Environment::Environment(const EpisodeSpec& spec) : map_("empty", kDefaultBounds, {}) { reset(spec); }

const Observation& Environment::reset(const EpisodeSpec& spec) {
  spec.validate();
  spec_ = spec;
  Rng rng(spec.seed);
  const KinematicsConfig& kin = spec.kinematics;

  // Spawn and goal first: procedural maps are generated around them.
  const Rect bounds = spec.map.kind == MapSource::Kind::procedural ? spec.map.bounds : Rect{};
  const bool procedural = spec.map.kind == MapSource::Kind::procedural;
  std::optional<MapModel> static_map;
  if (!procedural) static_map.emplace(build_map(spec, {}));
  const Rect& area = procedural ? bounds : static_map->bounds();

  auto free_point = [&](const std::string& what, double clearance, auto&& extra_ok) {
    for (int i = 0; i < kPlacementAttempts; ++i) {
      const Vec2 p = sample_in(rng, area, kSpawnMargin);
      if (static_map && distance_to_map(*static_map, p) < clearance) continue;
      if (!extra_ok(p)) continue;
      return p;
    }
    exhausted(what);
  };

  const double spawn_clearance = kin.robot_radius + 0.3;
  Vec2 spawn = spec.robot_spawn.random
                   ? free_point("robot spawn", spawn_clearance, [](const Vec2&) { return true; })
                   : jittered(rng, spec.robot_spawn.position, spec.jitter);
  goal_ = spec.goal.random ? free_point("goal", spawn_clearance,
                                        [&](const Vec2& g) { return norm(g - spawn) >= kMinGoalDistance; })
                           : jittered(rng, spec.goal.position, spec.jitter);

  if (procedural) {
    const std::array<ClearanceDisk, 2> disks{ClearanceDisk{spawn, kSpawnClearanceRadius},
                                             ClearanceDisk{goal_, kSpawnClearanceRadius}};
    map_ = build_map(spec, disks);
  } else {
    map_ = std::move(*static_map);
  }

  robot_ = RobotState{};
  robot_.pose.x = spawn.x;
  robot_.pose.y = spawn.y;
  robot_.pose.theta = spec.robot_spawn.theta ? normalize_angle(*spec.robot_spawn.theta)
                                             : normalize_angle(rng.uniform(-kPi, kPi));

  place_agents(rng);

  step_ = 0;
  outcome_ = Outcome::running;
  prev_dist_goal_ = norm(goal_ - robot_.pose.position());
  observation_ = make_observation();
  return observation_;
}

void Environment::place_agents(Rng& rng) {
  agents_.clear();
  agent_origins_.clear();
  const Vec2 robot_pos = robot_.pose.position();

  auto make_agent = [&](const Vec2& pos, const Vec2& goal, AgentPolicy policy) {
    HumanAgent a;
    a.position = pos;
    a.goal = goal;
    a.policy = policy;
    a.render_mode = spec_.render_mode;
    a.gait_phase = rng.uniform(0.0, kTwoPi);
    const Vec2 to_goal = goal - pos;
    if (abs_sq(to_goal) > 0.0) a.heading = std::atan2(to_goal.y, to_goal.x);
    if (policy == AgentPolicy::constant_velocity && norm(to_goal) > 0.0) {
      a.velocity = normalize(to_goal) * a.pref_speed;
    }
    agents_.push_back(a);
    agent_origins_.push_back(pos);
  };

  switch (spec_.agent_layout.kind) {
    case AgentLayout::Kind::random: {
      const double body = HumanAgent{}.body_radius;
      for (int k = 0; k < spec_.n_agents; ++k) {
        auto placed_ok = [&](const Vec2& p) {
          if (distance_to_map(map_, p) < body + 0.1) return false;
          if (norm(p - robot_pos) < spec_.kinematics.robot_radius + body + 1.0) return false;
          if (norm(p - goal_) < kGoalRadius + body + 0.1) return false;
          return std::all_of(agents_.begin(), agents_.end(), [&](const HumanAgent& o) {
            return norm(o.position - p) >= 2.0 * body + 0.2;
          });
        };
        std::optional<Vec2> pos;
        for (int i = 0; i < kPlacementAttempts && !pos; ++i) {
          const Vec2 p = sample_in(rng, map_.bounds(), 0.5);
          if (placed_ok(p)) pos = p;
        }
        if (!pos) exhausted("agent " + std::to_string(k));
        std::optional<Vec2> goal;
        for (int i = 0; i < kPlacementAttempts && !goal; ++i) {
          const Vec2 g = sample_in(rng, map_.bounds(), 0.5);
          if (distance_to_map(map_, g) >= body + 0.1 && norm(g - *pos) >= kMinGoalDistance) goal = g;
        }
        if (!goal) exhausted("agent goal " + std::to_string(k));
        make_agent(*pos, *goal, spec_.agent_policy);
      }
      break;
    }
    case AgentLayout::Kind::circle: {
      const Vec2 center = spec_.agent_layout.center.value_or((robot_pos + goal_) * 0.5);
      const double radius = spec_.agent_layout.radius;
      for (int k = 0; k < spec_.n_agents; ++k) {
        const double angle = kTwoPi * k / spec_.n_agents;
        const Vec2 offset = Vec2{std::cos(angle), std::sin(angle)} * radius;
        make_agent(center + offset, center - offset, spec_.agent_policy);
      }
      break;
    }
    case AgentLayout::Kind::scripted:
      for (const ScriptedAgent& sa : spec_.agent_layout.agents) {
        const Vec2 pos = jittered(rng, sa.position, spec_.jitter);
        const Vec2 goal = jittered(rng, sa.goal, spec_.jitter);
        make_agent(pos, goal, sa.policy);
      }
      break;
  }
}

std::vector<Circle> Environment::dynamic_circles() const {
  std::vector<Circle> out;
  out.reserve(agents_.size() * 3);
  for (const HumanAgent& a : agents_) append_rendered_circles(a, out);
  return out;
}

OrcaBody Environment::robot_body() const {
  return OrcaBody{robot_.pose.position(), robot_.world_velocity(), spec_.kinematics.robot_radius,
                  spec_.kinematics.v_max};
}

void Environment::advance_agents() {
  const double dt = spec_.kinematics.dt;
  const bool patrol = spec_.agent_layout.kind == AgentLayout::Kind::random;

  // Velocities are decided from the same snapshot, then applied together.
  std::vector<OrcaBody> bodies;
  bodies.reserve(agents_.size() + 1);
  for (const HumanAgent& a : agents_) {
    bodies.push_back(OrcaBody{a.position, a.velocity, a.body_radius, a.pref_speed});
  }
  bodies.push_back(robot_body());

  std::vector<Vec2> next(agents_.size());
  std::vector<OrcaBody> others;
  for (std::size_t i = 0; i < agents_.size(); ++i) {
    const HumanAgent& a = agents_[i];
    switch (a.policy) {
      case AgentPolicy::static_agent:
        next[i] = {};
        break;
      case AgentPolicy::constant_velocity:
        next[i] = a.velocity;
        break;
      case AgentPolicy::orca: {
        others.clear();
        for (std::size_t j = 0; j < bodies.size(); ++j) {
          if (j != i) others.push_back(bodies[j]);
        }
        next[i] = steer_to_goal(bodies[i], others, map_.segments(), spec_.orca, a.goal,
                                a.pref_speed, dt);
        break;
      }
    }
  }

  for (std::size_t i = 0; i < agents_.size(); ++i) {
    HumanAgent& a = agents_[i];
    a.velocity = next[i];
    a.position += a.velocity * dt;
    if (abs_sq(a.velocity) > 1e-12) a.heading = std::atan2(a.velocity.y, a.velocity.x);
    if (patrol && a.policy == AgentPolicy::orca && norm(a.goal - a.position) < kPatrolTolerance) {
      std::swap(a.goal, agent_origins_[i]);
    }
  }
}

StepResult Environment::step(const Action& action) {
  if (done()) {
    throw ContractViolation("step() called on a finished episode (outcome " +
                            std::string(to_string(outcome_)) + ")");
  }
  const KinematicsConfig& kin = spec_.kinematics;
  Action applied = action;
  if (spec_.zero_rotation) applied.omega = 0.0;

  advance_agents();
  for (HumanAgent& a : agents_) advance_gait(a, kin.dt);
  robot_ = step_robot(robot_, applied, kin);
  ++step_;

  const CollisionReport contact = check_collision(robot_, map_, agents_, kin);
  const double dist_goal = norm(goal_ - robot_.pose.position());
  const bool collided = contact.collided;
  // A collision in the same tick as reaching the goal is not a success.
  const bool reached = dist_goal < kGoalRadius && !collided;

  StepResult result;
  result.reward = compute_reward(prev_dist_goal_, dist_goal, reached, collided, contact.min_clearance);
  prev_dist_goal_ = dist_goal;

  if (collided && spec_.collision_mode == CollisionMode::terminate) {
    outcome_ = Outcome::collision;
  } else if (reached) {
    outcome_ = Outcome::success;
  } else if (step_ >= spec_.max_steps) {
    outcome_ = Outcome::timeout;
  }

  observation_ = make_observation();
  result.observation = observation_;
  result.outcome = outcome_;
  result.done = done();
  result.info = StepInfo{contact.min_clearance, dist_goal, step_, contact.with};
  return result;
}

Observation Environment::make_observation() const {
  Observation obs;
  obs.scan = raycast_scan(map_, dynamic_circles(), robot_.pose, spec_.lidar);
  obs.scan.timestamp_step = step_;
  obs.representation = spec_.representation;
  if (spec_.representation == Representation::lidar1d) {
    obs.s_l = normalize_1d(obs.scan, spec_.lidar.max_range);
  } else {
    obs.s_l = rings_encode(obs.scan, spec_.lidar, spec_.rings).cells;
  }
  const Vec2 goal_rel = rotate(goal_ - robot_.pose.position(), -robot_.pose.theta);
  obs.s_r = {goal_rel.x, goal_rel.y, robot_.velocity.vx, robot_.velocity.vy, robot_.velocity.omega};
  return obs;
}

}  // namespace navsim
