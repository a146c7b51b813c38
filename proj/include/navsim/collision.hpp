#pragma once

#include <span>
#include <string_view>

#include "navsim/agents.hpp"
#include "navsim/kinematics.hpp"

namespace navsim {

enum class ContactKind { none, obstacle, agent, wall };

std::string_view contact_name(ContactKind kind);

struct CollisionReport {
  bool collided = false;
  /// Surface-to-surface clearance between the robot disk and the nearest
  /// rendered obstacle (polygon, wall, agent legs or ellipse disks).
  double min_clearance = 0.0;
  ContactKind with = ContactKind::none;
  /// Clearance to the nearest agent body disk (diagnostic; not used for the
  /// collision flag).
  double body_clearance = 0.0;
};

CollisionReport check_collision(const RobotState& robot, const MapModel& map,
                                std::span<const HumanAgent> agents, const KinematicsConfig& cfg);

}  // namespace navsim
