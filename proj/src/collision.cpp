#include "navsim/collision.hpp"

#include <algorithm>
#include <limits>
#include <vector>

namespace navsim {

std::string_view contact_name(ContactKind kind) {
  switch (kind) {
    case ContactKind::none:
      return "none";
    case ContactKind::obstacle:
      return "obstacle";
    case ContactKind::agent:
      return "agent";
    case ContactKind::wall:
      return "wall";
  }
  return "none";
}

CollisionReport check_collision(const RobotState& robot, const MapModel& map,
                                std::span<const HumanAgent> agents, const KinematicsConfig& cfg) {
  const Vec2 p = robot.pose.position();
  // Wall and polygons are tracked separately to name the contact.
  const double wall = distance_to_wall(map.bounds(), p);
  const double obstacle = distance_to_polygons(map, p);

  std::vector<Circle> rendered;
  rendered.reserve(agents.size() * 3);
  double body = std::numeric_limits<double>::infinity();
  for (const HumanAgent& a : agents) {
    append_rendered_circles(a, rendered);
    body = std::min(body, norm(p - a.position) - a.body_radius);
  }
  const double agent = distance_to_circles(rendered, p);

  CollisionReport report;
  double nearest = wall;
  report.with = ContactKind::wall;
  if (obstacle < nearest) {
    nearest = obstacle;
    report.with = ContactKind::obstacle;
  }
  if (agent < nearest) {
    nearest = agent;
    report.with = ContactKind::agent;
  }
  report.min_clearance = nearest - cfg.robot_radius;
  report.collided = nearest < cfg.robot_radius;
  report.body_clearance = body - cfg.robot_radius;
  if (!report.collided) report.with = ContactKind::none;
  return report;
}

}  // namespace navsim
