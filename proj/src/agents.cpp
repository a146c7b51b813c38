#include "navsim/agents.hpp"

#include <algorithm>
#include <cmath>

namespace navsim {

std::array<Circle, 2> leg_circles(const HumanAgent& agent) {
  const Vec2 forward{std::cos(agent.heading), std::sin(agent.heading)};
  const Vec2 lateral = perp_left(forward);
  const double speed_ratio = agent.pref_speed > 0.0 ? agent.speed() / agent.pref_speed : 0.0;
  const double amplitude = kLegAmplitude * std::min(1.0, speed_ratio);
  const double swing = amplitude * std::sin(agent.gait_phase);
  return {Circle{agent.position + lateral * kLegLateralOffset + forward * swing, kLegRadius},
          Circle{agent.position - lateral * kLegLateralOffset - forward * swing, kLegRadius}};
}

std::array<Circle, 3> ellipse_circles(const HumanAgent& agent) {
  // Center disk spans the forward semi-axis; the side disks reach the
  // shoulders. Radii chosen so the union stays within 0.05 m of the ellipse.
  constexpr double kSideOffset = 0.17;
  constexpr double kSideRadius = kEllipseLateral - kSideOffset;
  const Vec2 lateral = perp_left({std::cos(agent.heading), std::sin(agent.heading)});
  return {Circle{agent.position, kEllipseForward},
          Circle{agent.position + lateral * kSideOffset, kSideRadius},
          Circle{agent.position - lateral * kSideOffset, kSideRadius}};
}

void append_rendered_circles(const HumanAgent& agent, std::vector<Circle>& out) {
  if (agent.render_mode == RenderMode::legs) {
    for (const Circle& c : leg_circles(agent)) out.push_back(c);
  } else {
    for (const Circle& c : ellipse_circles(agent)) out.push_back(c);
  }
}

void advance_gait(HumanAgent& agent, double dt) {
  const double phase = agent.gait_phase + kTwoPi * agent.speed() * dt / kStrideLength;
  agent.gait_phase = std::fmod(phase, kTwoPi);
  if (agent.gait_phase < 0.0) agent.gait_phase += kTwoPi;
}

}  // namespace navsim
