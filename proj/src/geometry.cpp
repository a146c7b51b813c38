#include "navsim/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "navsim/error.hpp"
#include "navsim/rng.hpp"
#include "navsim/simd/kernels.hpp"

namespace navsim {

using nlohmann::json;

double normalize_angle(double theta) {
  double t = std::remainder(theta, kTwoPi);  // [-pi, pi]
  if (t <= -kPi) t += kTwoPi;
  return t;
}

double signed_area(std::span<const Vec2> poly) {
  double acc = 0.0;
  for (std::size_t i = 0, n = poly.size(); i < n; ++i) acc += det(poly[i], poly[(i + 1) % n]);
  return 0.5 * acc;
}

namespace {

int orientation(const Vec2& a, const Vec2& b, const Vec2& c) {
  const double v = det(b - a, c - a);
  return (v > 0.0) - (v < 0.0);
}

bool on_segment(const Vec2& a, const Vec2& b, const Vec2& p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

bool segments_intersect(const Vec2& p1, const Vec2& p2, const Vec2& q1, const Vec2& q2) {
  const int o1 = orientation(p1, p2, q1);
  const int o2 = orientation(p1, p2, q2);
  const int o3 = orientation(q1, q2, p1);
  const int o4 = orientation(q1, q2, p2);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(p1, p2, q1)) return true;
  if (o2 == 0 && on_segment(p1, p2, q2)) return true;
  if (o3 == 0 && on_segment(q1, q2, p1)) return true;
  if (o4 == 0 && on_segment(q1, q2, p2)) return true;
  return false;
}

}  // namespace

bool is_simple_polygon(std::span<const Vec2> poly) {
  const std::size_t n = poly.size();
  if (n < 3) return false;
  if (std::abs(signed_area(poly)) <= 0.0) return false;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a1 = poly[i];
    const Vec2& a2 = poly[(i + 1) % n];
    if (a1 == a2) return false;
    for (std::size_t j = i + 1; j < n; ++j) {
      // Adjacent edges share a vertex; skip them.
      if (j == i + 1 || (i == 0 && j == n - 1)) continue;
      if (segments_intersect(a1, a2, poly[j], poly[(j + 1) % n])) return false;
    }
  }
  return true;
}

bool point_in_polygon(std::span<const Vec2> poly, const Vec2& p) {
  bool inside = false;
  for (std::size_t i = 0, n = poly.size(), j = n - 1; i < n; j = i++) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[j];
    if ((a.y > p.y) != (b.y > p.y) && p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x) {
      inside = !inside;
    }
  }
  return inside;
}

double polygon_boundary_distance(std::span<const Vec2> poly, const Vec2& p) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0, n = poly.size(); i < n; ++i) {
    best = std::min(best, point_segment_distance(p, poly[i], poly[(i + 1) % n]));
  }
  return best;
}

// ---------------------------------------------------------------------------

MapModel::MapModel(std::string name, Rect bounds, std::vector<Polygon> polygons)
    : name_(std::move(name)), bounds_(bounds), polygons_(std::move(polygons)) {
  if (!(bounds_.width() > 0.0) || !(bounds_.height() > 0.0)) {
    throw Error("invalid-map", "bounds must have positive width and height");
  }
  for (std::size_t i = 0; i < polygons_.size(); ++i) {
    Polygon& poly = polygons_[i];
    const std::string where = "polygon " + std::to_string(i);
    if (poly.size() < 3) throw Error("invalid-map", where + " has fewer than 3 vertices");
    for (const Vec2& v : poly) {
      if (!bounds_.contains_strictly(v)) {
        throw Error("invalid-map", where + " has a vertex outside the bounds");
      }
    }
    if (!is_simple_polygon(poly)) throw Error("invalid-map", where + " is not simple");
    if (signed_area(poly) < 0.0) std::reverse(poly.begin(), poly.end());
  }

  for (const Polygon& poly : polygons_) {
    for (std::size_t i = 0, n = poly.size(); i < n; ++i) {
      segments_.push_back({poly[i], poly[(i + 1) % n]});
    }
  }
  const Vec2 c00{bounds_.xmin, bounds_.ymin}, c10{bounds_.xmax, bounds_.ymin};
  const Vec2 c11{bounds_.xmax, bounds_.ymax}, c01{bounds_.xmin, bounds_.ymax};
  // Clockwise around the interior.
  segments_.push_back({c00, c01});
  segments_.push_back({c01, c11});
  segments_.push_back({c11, c10});
  segments_.push_back({c10, c00});

  for (const Segment& s : segments_) {
    ax_.push_back(s.a.x);
    ay_.push_back(s.a.y);
    ex_.push_back(s.b.x - s.a.x);
    ey_.push_back(s.b.y - s.a.y);
  }
}

bool MapModel::inside_any_polygon(const Vec2& p) const {
  return std::any_of(polygons_.begin(), polygons_.end(),
                     [&](const Polygon& poly) { return point_in_polygon(poly, p); });
}

void LidarConfig::validate() const {
  if (n_beams < 1) throw Error("invalid-config", "lidar n_beams must be >= 1");
  if (!(max_range > 0.0)) throw Error("invalid-config", "lidar max_range must be > 0");
  if (!(angular_span > 0.0) || angular_span > kTwoPi) {
    throw Error("invalid-config", "lidar angular_span must be in (0, 2pi]");
  }
}

// ---------------------------------------------------------------------------

namespace {

constexpr int kPlacementAttempts = 1000;

bool polygon_clear_of(const Polygon& poly, const ClearanceDisk& disk) {
  if (point_in_polygon(poly, disk.center)) return false;
  return polygon_boundary_distance(poly, disk.center) >= disk.radius;
}

}  // namespace

MapModel generate_map(std::uint64_t seed, int n_polygons, const Rect& bounds,
                      std::span<const ClearanceDisk> clearance, std::string name) {
  if (n_polygons < 0) throw Error("invalid-argument", "n_polygons must be >= 0");
  for (const ClearanceDisk& d : clearance) {
    if (!(d.radius > 0.0)) throw Error("invalid-argument", "clearance radius must be > 0");
  }

  constexpr double kEdgeMargin = 1e-3;
  Rng rng(seed);
  std::vector<Polygon> polygons;
  polygons.reserve(static_cast<std::size_t>(n_polygons));

  for (int p = 0; p < n_polygons; ++p) {
    bool placed = false;
    for (int attempt = 0; attempt < kPlacementAttempts && !placed; ++attempt) {
      const int n_vertices = static_cast<int>(rng.uniform_int(3, 8));
      const double radius = rng.uniform(0.3, 1.5);
      const double pad = radius + kEdgeMargin;
      if (bounds.width() <= 2.0 * pad || bounds.height() <= 2.0 * pad) continue;
      const Vec2 center{rng.uniform(bounds.xmin + pad, bounds.xmax - pad),
                        rng.uniform(bounds.ymin + pad, bounds.ymax - pad)};
      // Jittered even spacing keeps vertices ordered CCW and the polygon convex.
      const double phase = rng.uniform(0.0, kTwoPi);
      const double spacing = kTwoPi / n_vertices;
      Polygon poly;
      poly.reserve(static_cast<std::size_t>(n_vertices));
      for (int k = 0; k < n_vertices; ++k) {
        const double angle = phase + spacing * (k + rng.uniform(-0.3, 0.3));
        poly.push_back(center + Vec2{std::cos(angle), std::sin(angle)} * radius);
      }
      const bool clear = std::all_of(clearance.begin(), clearance.end(), [&](const auto& d) {
        return polygon_clear_of(poly, d);
      });
      if (clear) {
        polygons.push_back(std::move(poly));
        placed = true;
      }
    }
    if (!placed) {
      throw Error("placement-exhausted", "could not place polygon " + std::to_string(p) +
                                             " after " + std::to_string(kPlacementAttempts) +
                                             " attempts");
    }
  }
  return MapModel(std::move(name), bounds, std::move(polygons));
}

// ---------------------------------------------------------------------------

Scan raycast_scan(const MapModel& map, std::span<const Circle> dynamic_circles, const Pose& pose,
                  const LidarConfig& cfg) {
  const Vec2 origin = pose.position() + rotate(cfg.mount_offset, pose.theta);
  const auto n = static_cast<std::size_t>(cfg.n_beams);

  std::vector<double> dx(n), dy(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double angle = pose.theta + cfg.beam_angle(static_cast<int>(i));
    dx[i] = std::cos(angle);
    dy[i] = std::sin(angle);
  }

  std::vector<double> cx, cy, cr;
  cx.reserve(dynamic_circles.size());
  cy.reserve(dynamic_circles.size());
  cr.reserve(dynamic_circles.size());
  for (const Circle& c : dynamic_circles) {
    cx.push_back(c.center.x);
    cy.push_back(c.center.y);
    cr.push_back(c.radius);
  }

  const simd::RayFan rays{origin.x, origin.y, dx.data(), dy.data(), n};
  const simd::SegmentView segs{map.seg_ax().data(), map.seg_ay().data(), map.seg_ex().data(),
                               map.seg_ey().data(), map.seg_ax().size()};
  const simd::CircleView circles{cx.data(), cy.data(), cr.data(), cx.size()};

  Scan scan;
  scan.ranges.resize(n);
  simd::active_kernels().cast_rays(rays, segs, circles, cfg.max_range, scan.ranges.data());
  return scan;
}

double distance_to_wall(const Rect& b, const Vec2& p) {
  if (p.x >= b.xmin && p.x <= b.xmax && p.y >= b.ymin && p.y <= b.ymax) {
    return std::min({p.x - b.xmin, b.xmax - p.x, p.y - b.ymin, b.ymax - p.y});
  }
  const double ox = std::max({b.xmin - p.x, 0.0, p.x - b.xmax});
  const double oy = std::max({b.ymin - p.y, 0.0, p.y - b.ymax});
  return -std::hypot(ox, oy);
}

double distance_to_polygons(const MapModel& map, const Vec2& p) {
  double best = std::numeric_limits<double>::infinity();
  for (const Polygon& poly : map.polygons()) {
    const double d = polygon_boundary_distance(poly, p);
    best = std::min(best, point_in_polygon(poly, p) ? -d : d);
  }
  return best;
}

double distance_to_map(const MapModel& map, const Vec2& p) {
  return std::min(distance_to_wall(map.bounds(), p), distance_to_polygons(map, p));
}

double distance_to_circles(std::span<const Circle> circles, const Vec2& p) {
  double best = std::numeric_limits<double>::infinity();
  for (const Circle& c : circles) best = std::min(best, norm(p - c.center) - c.radius);
  return best;
}

double distance_to_surfaces(const MapModel& map, std::span<const Circle> dynamic_circles,
                            const Vec2& p) {
  return std::min(distance_to_map(map, p), distance_to_circles(dynamic_circles, p));
}

// ---------------------------------------------------------------------------

std::string map_to_json(const MapModel& map) {
  json polys = json::array();
  for (const Polygon& poly : map.polygons()) {
    json pts = json::array();
    for (const Vec2& v : poly) pts.push_back({v.x, v.y});
    polys.push_back(std::move(pts));
  }
  const Rect& b = map.bounds();
  json j = {{"name", map.name()}, {"bounds", {b.xmin, b.ymin, b.xmax, b.ymax}}, {"polygons", polys}};
  return j.dump(2) + "\n";
}

MapModel map_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error("schema", std::string("map file is not valid JSON: ") + e.what());
  }
  try {
    const auto bounds = j.at("bounds").get<std::vector<double>>();
    if (bounds.size() != 4) throw Error("schema", "bounds: expected [xmin, ymin, xmax, ymax]");
    std::vector<Polygon> polygons;
    const json& polys = j.at("polygons");
    for (std::size_t i = 0; i < polys.size(); ++i) {
      Polygon poly;
      for (const json& v : polys[i]) {
        const auto xy = v.get<std::vector<double>>();
        if (xy.size() != 2) {
          throw Error("schema", "polygons[" + std::to_string(i) + "]: vertex must be [x, y]");
        }
        poly.push_back({xy[0], xy[1]});
      }
      polygons.push_back(std::move(poly));
    }
    return MapModel(j.value("name", std::string("unnamed")),
                    Rect{bounds[0], bounds[1], bounds[2], bounds[3]}, std::move(polygons));
  } catch (const json::exception& e) {
    throw Error("schema", std::string("map file: ") + e.what());
  }
}

MapModel load_map(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("io", "cannot open map file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return map_from_json(ss.str());
}

void save_map(const MapModel& map, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("io", "cannot write map file " + path.string());
  out << map_to_json(map);
  if (!out) throw Error("io", "write failed for " + path.string());
}

}  // namespace navsim
