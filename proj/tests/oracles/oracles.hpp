#pragma once

// Brute-force reference computations. They share nothing with the library
// beyond the Vec2 value type, so agreement is evidence of correctness.

#include <cstdint>
#include <span>
#include <vector>

#include "navsim/geometry.hpp"
#include "navsim/representations.hpp"

namespace oracle {

using navsim::Vec2;

struct Scene {
  navsim::Rect bounds;
  std::vector<std::vector<Vec2>> polygons;
  std::vector<navsim::Circle> circles;
};

Scene scene_of(const navsim::MapModel& map, std::span<const navsim::Circle> circles);

/// Signed distance: exact point-segment and point-circle distances, sign by
/// crossing-number containment. Negative inside an obstacle or beyond the wall.
double signed_distance(const Scene& s, Vec2 p);

/// Same quantity from dense boundary samples (spacing `h` meters).
double sampled_distance(const Scene& s, Vec2 p, double h = 1e-4);

/// Marches along the ray in 1e-4 m steps and reports the first sample inside
/// an obstacle. Steps are skipped only where the distance bound proves no
/// sample can be inside; within 1e-4 m of a surface the march refines to
/// 1e-6 m steps so thin corner chords are not stepped over.
double march_range(const Scene& s, Vec2 origin, double angle, double max_range);

/// Reciprocal half-plane for agent A against B built from the geometry of the
/// truncated velocity obstacle: feasible iff dot(v - point, normal) >= 0.
struct HalfPlane {
  Vec2 point;
  Vec2 normal;
};
HalfPlane orca_half_plane(Vec2 pa, Vec2 va, double ra, Vec2 pb, Vec2 vb, double rb, double tau);

/// Velocity within `max_speed` closest to `pref` satisfying all half-planes,
/// chosen among `n_samples` candidates placed on the constraint lines, on the
/// speed circle and over the disk. When nothing is feasible, the candidate
/// with the smallest largest violation.
Vec2 sampled_lp(std::span<const HalfPlane> planes, double max_speed, Vec2 pref,
                int n_samples = 100000);

/// Radial bin by scanning the edge array; -1 for "beyond".
int radial_bin_linear(double distance, const navsim::RingsConfig& cfg);

/// Mean squared error with plain nested loops.
double mse(const std::vector<std::vector<double>>& a, const std::vector<std::vector<double>>& b);

/// Symmetric Hausdorff distance between the boundary of an ellipse (semi-axes
/// a along x, b along y, centered at the origin) and the boundary of the union
/// of the circles, both sampled with `n` points per curve.
double hausdorff_ellipse_vs_circles(double a, double b, std::span<const navsim::Circle> circles,
                                    int n = 4000);

}  // namespace oracle
