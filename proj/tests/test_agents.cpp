#include <doctest.h>

#include <cmath>

#include "navsim/agents.hpp"
#include "navsim/rng.hpp"
#include "oracles/oracles.hpp"

using namespace navsim;

namespace {

HumanAgent walker(double speed, double phase, double heading = 0.0) {
  HumanAgent a;
  a.position = {1.0, 2.0};
  a.heading = heading;
  a.velocity = Vec2{std::cos(heading), std::sin(heading)} * speed;
  a.gait_phase = phase;
  return a;
}

// Along-track offset of a leg center relative to the agent position.
double along(const HumanAgent& a, const Circle& c) {
  return dot(c.center - a.position, Vec2{std::cos(a.heading), std::sin(a.heading)});
}
double across(const HumanAgent& a, const Circle& c) {
  return dot(c.center - a.position, Vec2{-std::sin(a.heading), std::cos(a.heading)});
}

}  // namespace

TEST_CASE("standing agent: legs side by side") {
  const HumanAgent a = walker(0.0, 1.0);
  const auto legs = leg_circles(a);
  for (const Circle& c : legs) {
    CHECK(c.radius == kLegRadius);
    CHECK(std::abs(along(a, c)) <= 1e-15);
  }
  CHECK(across(a, legs[0]) == doctest::Approx(0.1));
  CHECK(across(a, legs[1]) == doctest::Approx(-0.1));
}

TEST_CASE("full-speed stride at phase pi/2 reaches the amplitude") {
  const HumanAgent a = walker(1.0, kPi / 2, 0.7);
  const auto legs = leg_circles(a);
  CHECK(along(a, legs[0]) == doctest::Approx(0.15));
  CHECK(along(a, legs[1]) == doctest::Approx(-0.15));
}

TEST_CASE("phase shift by pi swaps along-track offsets") {
  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    const double phi = rng.uniform(0, kPi);
    const double speed = rng.uniform(0, 1);
    const HumanAgent a = walker(speed, phi);
    const HumanAgent b = walker(speed, phi + kPi);
    CHECK(along(a, leg_circles(a)[0]) == doctest::Approx(along(b, leg_circles(b)[1])).scale(1e-12));
    CHECK(along(a, leg_circles(a)[1]) == doctest::Approx(along(b, leg_circles(b)[0])).scale(1e-12));
  }
}

TEST_CASE("legs stay close together and inside the padded body disk") {
  Rng rng(2);
  for (int i = 0; i < 1000; ++i) {
    const HumanAgent a = walker(rng.uniform(0, 1.2), rng.uniform(0, kTwoPi), rng.uniform(-kPi, kPi));
    const auto legs = leg_circles(a);
    CHECK(norm(legs[0].center - legs[1].center) <= 2 * (0.1 + 0.15) + 1e-12);
    for (const Circle& c : legs) CHECK(norm(c.center - a.position) + c.radius <= a.body_radius + 0.1 + 1e-12);
  }
}

TEST_CASE("ellipse circles: heading 0 puts centers on the y axis") {
  HumanAgent a = walker(0.5, 0.0, 0.0);
  a.render_mode = RenderMode::ellipse;
  for (const Circle& c : ellipse_circles(a)) CHECK(std::abs(c.center.x - a.position.x) <= 1e-15);
}

TEST_CASE("ellipse circles rotate with the heading") {
  Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    const double h = rng.uniform(-kPi, kPi);
    const auto base = ellipse_circles(walker(0.5, 0.0, 0.0));
    const HumanAgent turned = walker(0.5, 0.0, h);
    const auto rot = ellipse_circles(turned);
    for (std::size_t k = 0; k < base.size(); ++k) {
      const Vec2 want = turned.position + rotate(base[k].center - Vec2{1.0, 2.0}, h);
      CHECK(norm(rot[k].center - want) <= 1e-12);
      CHECK(rot[k].radius == base[k].radius);
    }
  }
}

TEST_CASE("ellipse circles cover a 0.3 x 0.2 ellipse within 0.05 m Hausdorff") {
  HumanAgent a;
  a.position = {0, 0};
  a.heading = 0.0;
  const auto circles = ellipse_circles(a);
  // Heading along x: forward semi-axis 0.2 on x, lateral 0.3 on y.
  const double h = oracle::hausdorff_ellipse_vs_circles(kEllipseForward, kEllipseLateral, circles);
  MESSAGE("Hausdorff distance " << h);
  CHECK(h <= 0.05);
}

TEST_CASE("rendered circles follow the render mode") {
  std::vector<Circle> out;
  HumanAgent a = walker(0.5, 0.3);
  append_rendered_circles(a, out);
  CHECK(out.size() == 2);
  a.render_mode = RenderMode::ellipse;
  append_rendered_circles(a, out);
  CHECK(out.size() == 5);
}

TEST_CASE("advance_gait adds one cycle per stride length and wraps") {
  HumanAgent a = walker(1.0, 0.0);
  advance_gait(a, 0.2);
  CHECK(a.gait_phase == doctest::Approx(kTwoPi * 0.2 / 0.6));
  for (int i = 0; i < 100; ++i) {
    advance_gait(a, 0.2);
    CHECK(a.gait_phase >= 0.0);
    CHECK(a.gait_phase < kTwoPi);
  }
  HumanAgent still = walker(0.0, 1.0);
  advance_gait(still, 0.2);
  CHECK(still.gait_phase == 1.0);
}
