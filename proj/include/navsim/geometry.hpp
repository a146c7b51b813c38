#pragma once

#include <cstdint>
#include <filesystem>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "navsim/vec2.hpp"

namespace navsim {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Wraps an angle into (-pi, pi].
double normalize_angle(double theta);

struct Rect {
  double xmin = 0.0;
  double ymin = 0.0;
  double xmax = 0.0;
  double ymax = 0.0;

  double width() const { return xmax - xmin; }
  double height() const { return ymax - ymin; }
  bool contains_strictly(const Vec2& p) const {
    return p.x > xmin && p.x < xmax && p.y > ymin && p.y < ymax;
  }
  bool operator==(const Rect&) const = default;
};

/// Default 20 x 20 m world centered on the origin.
inline constexpr Rect kDefaultBounds{-10.0, -10.0, 10.0, 10.0};

struct Pose {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;  ///< radians, (-pi, pi]

  Vec2 position() const { return {x, y}; }
  bool operator==(const Pose&) const = default;
};

using Polygon = std::vector<Vec2>;

struct Circle {
  Vec2 center;
  double radius = 0.0;
  bool operator==(const Circle&) const = default;
};

/// Directed edge. Free space lies on the right-hand side.
struct Segment {
  Vec2 a;
  Vec2 b;
};

/// Static world: polygon obstacles inside a solid rectangular wall.
///
/// Immutable once built. Construction validates the invariants (positive
/// bounds, >= 3 vertices, simple polygons strictly inside bounds) and
/// throws navsim::Error{"invalid-map"} naming the offending polygon.
/// Polygons are stored counter-clockwise regardless of input winding.
class MapModel {
 public:
  MapModel(std::string name, Rect bounds, std::vector<Polygon> polygons);

  const std::string& name() const { return name_; }
  const Rect& bounds() const { return bounds_; }
  const std::vector<Polygon>& polygons() const { return polygons_; }

  /// All obstacle edges: polygon edges (CCW) followed by the four wall edges
  /// (clockwise, so free space is to the right of every edge).
  const std::vector<Segment>& segments() const { return segments_; }

  /// Same edges in structure-of-arrays form for the ray kernels.
  const std::vector<double>& seg_ax() const { return ax_; }
  const std::vector<double>& seg_ay() const { return ay_; }
  const std::vector<double>& seg_ex() const { return ex_; }
  const std::vector<double>& seg_ey() const { return ey_; }

  /// True when p lies in the interior of some polygon.
  bool inside_any_polygon(const Vec2& p) const;

  bool operator==(const MapModel& o) const {
    return name_ == o.name_ && bounds_ == o.bounds_ && polygons_ == o.polygons_;
  }

 private:
  std::string name_;
  Rect bounds_;
  std::vector<Polygon> polygons_;
  std::vector<Segment> segments_;
  std::vector<double> ax_, ay_, ex_, ey_;
};

struct LidarConfig {
  int n_beams = 1080;
  double angular_span = kTwoPi;  ///< beam i at theta + i * span / n_beams, CCW
  double max_range = 25.0;
  Vec2 mount_offset{};           ///< robot frame

  /// Robot-frame angle of beam i.
  double beam_angle(int i) const { return i * angular_span / n_beams; }
  void validate() const;
  bool operator==(const LidarConfig&) const = default;
};

struct Scan {
  std::vector<double> ranges;
  std::int64_t timestamp_step = 0;
};

struct ClearanceDisk {
  Vec2 center;
  double radius = 0.0;
};

/// Signed area; positive for counter-clockwise vertex order.
double signed_area(std::span<const Vec2> poly);
bool is_simple_polygon(std::span<const Vec2> poly);
bool point_in_polygon(std::span<const Vec2> poly, const Vec2& p);
/// Shortest distance from p to the polygon's boundary.
double polygon_boundary_distance(std::span<const Vec2> poly, const Vec2& p);

/// Random convex polygons (3-8 vertices, circumradius in [0.3, 1.5] m) by
/// rejection sampling, kept clear of every clearance disk and strictly
/// inside bounds. Fails with "placement-exhausted" after 1000 attempts for
/// a single polygon.
MapModel generate_map(std::uint64_t seed, int n_polygons, const Rect& bounds,
                      std::span<const ClearanceDisk> clearance, std::string name = "procedural");

/// Simulated scan from the mount point of `pose`. Beams that hit nothing
/// within max_range report exactly max_range.
Scan raycast_scan(const MapModel& map, std::span<const Circle> dynamic_circles, const Pose& pose,
                  const LidarConfig& cfg);

/// Signed distance from p to the nearest obstacle surface (polygons, wall,
/// circles). Negative inside an obstacle or outside the wall.
double distance_to_surfaces(const MapModel& map, std::span<const Circle> dynamic_circles,
                            const Vec2& p);

/// Same, restricted to the static map, or to one part of it.
double distance_to_map(const MapModel& map, const Vec2& p);
double distance_to_wall(const Rect& bounds, const Vec2& p);
double distance_to_polygons(const MapModel& map, const Vec2& p);
double distance_to_circles(std::span<const Circle> circles, const Vec2& p);

// Map file: {"name": str, "bounds": [xmin, ymin, xmax, ymax],
//            "polygons": [[[x, y], ...], ...]}
std::string map_to_json(const MapModel& map);
MapModel map_from_json(const std::string& text);
MapModel load_map(const std::filesystem::path& path);
void save_map(const MapModel& map, const std::filesystem::path& path);

}  // namespace navsim
