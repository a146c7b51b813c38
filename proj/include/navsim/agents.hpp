#pragma once

#include <array>
#include <vector>

#include "navsim/geometry.hpp"

namespace navsim {

enum class AgentPolicy { orca, constant_velocity, static_agent };
enum class RenderMode { legs, ellipse };

// Leg model: two leg disks beside the body center that swing antiphase
// along the heading.
inline constexpr double kLegRadius = 0.1;
inline constexpr double kLegLateralOffset = 0.1;
inline constexpr double kLegAmplitude = 0.15;
inline constexpr double kStrideLength = 0.6;  ///< m per gait cycle

// Body ellipse, semi-axes: lateral (shoulders) and along the heading.
inline constexpr double kEllipseLateral = 0.3;
inline constexpr double kEllipseForward = 0.2;

struct HumanAgent {
  Vec2 position;
  Vec2 velocity;
  double heading = 0.0;
  double body_radius = 0.3;
  AgentPolicy policy = AgentPolicy::orca;
  Vec2 goal;
  double pref_speed = 1.0;
  double gait_phase = 0.0;  ///< [0, 2pi)
  RenderMode render_mode = RenderMode::legs;

  double speed() const { return norm(velocity); }
  bool operator==(const HumanAgent&) const = default;
};

std::array<Circle, 2> leg_circles(const HumanAgent& agent);

/// Three disks across the shoulder line covering the body ellipse.
std::array<Circle, 3> ellipse_circles(const HumanAgent& agent);

/// Circles the LiDAR sees for this agent, per its render mode.
void append_rendered_circles(const HumanAgent& agent, std::vector<Circle>& out);

/// Advances the gait by one stride fraction: phase += 2 pi * speed * dt / stride.
void advance_gait(HumanAgent& agent, double dt);

}  // namespace navsim
