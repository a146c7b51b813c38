#include "navsim/render.hpp"

#include <png.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "navsim/error.hpp"
#include "navsim/runner.hpp"

namespace navsim {

namespace {

void fill_disk(GrayImage& img, double cx, double cy, double r, std::uint8_t v) {
  const int x0 = static_cast<int>(std::floor(cx - r));
  const int x1 = static_cast<int>(std::ceil(cx + r));
  const int y0 = static_cast<int>(std::floor(cy - r));
  const int y1 = static_cast<int>(std::ceil(cy + r));
  for (int y = std::max(0, y0); y <= std::min(frame::kPanel - 1, y1); ++y) {
    for (int x = std::max(0, x0); x <= std::min(frame::kPanel - 1, x1); ++x) {
      const double dx = x + 0.5 - cx;
      const double dy = y + 0.5 - cy;
      if (dx * dx + dy * dy <= r * r) img.pixels[static_cast<std::size_t>(y * img.width + x)] = v;
    }
  }
}

struct PngFile {
  explicit PngFile(const std::filesystem::path& path, const char* mode) : f(std::fopen(path.c_str(), mode)) {}
  ~PngFile() {
    if (f) std::fclose(f);
  }
  std::FILE* f;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

}  // namespace

GrayImage render_frame(std::span<const float> ranges, const LidarConfig& lidar,
                       const RingsConfig& rings) {
  if (ranges.size() != static_cast<std::size_t>(lidar.n_beams)) {
    throw Error("shape-mismatch", "scan has " + std::to_string(ranges.size()) + " beams, lidar " +
                                      std::to_string(lidar.n_beams));
  }
  GrayImage img;
  img.width = 2 * frame::kPanel;
  img.height = frame::kPanel;
  img.pixels.assign(static_cast<std::size_t>(img.width * img.height), frame::kFreeGray);

  // Scan panel.
  const double c = frame::kPanel / 2.0;
  const double px_per_m = c / frame::kScanViewRadius;
  fill_disk(img, c, c, 0.3 * px_per_m, 96);
  for (int i = 0; i < lidar.n_beams; ++i) {
    const double r = ranges[static_cast<std::size_t>(i)];
    if (r >= lidar.max_range) continue;
    const double a = lidar.beam_angle(i);
    const double x = lidar.mount_offset.x + r * std::cos(a);
    const double y = lidar.mount_offset.y + r * std::sin(a);
    fill_disk(img, c + x * px_per_m, c - y * px_per_m, 1.2, 0);
  }

  // Rings panel.
  Scan scan;
  scan.ranges.assign(ranges.begin(), ranges.end());
  const RingsGrid grid = rings_encode(scan, lidar, rings);
  for (int y = 0; y < frame::kPanel; ++y) {
    const int col = y * grid.n_angular / frame::kPanel;
    for (int x = 0; x < frame::kPanel; ++x) {
      const float v = grid.at(col, x * grid.n_radial / frame::kPanel);
      const std::uint8_t g = v == rings::kFree      ? frame::kFreeGray
                             : v == rings::kOccupied ? frame::kOccupiedGray
                                                     : frame::kUnknownGray;
      img.pixels[static_cast<std::size_t>(y * img.width + frame::kRingsX0 + x)] = g;
    }
  }
  return img;
}

void write_png(const std::filesystem::path& path, const GrayImage& img) {
  PngFile file(path, "wb");
  if (!file.f) throw Error("io", path.string() + ": cannot open for writing");
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw Error("io", path.string() + ": png init failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw Error("io", path.string() + ": png write failed");
  }
  png_init_io(png, file.f);
  png_set_IHDR(png, info, static_cast<png_uint_32>(img.width), static_cast<png_uint_32>(img.height), 8,
               PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (int y = 0; y < img.height; ++y) {
    png_write_row(png, img.pixels.data() + static_cast<std::size_t>(y * img.width));
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

GrayImage read_png(const std::filesystem::path& path) {
  PngFile file(path, "rb");
  if (!file.f) throw Error("io", path.string() + ": cannot open for reading");
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw Error("io", path.string() + ": png init failed");
  }
  GrayImage img;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw Error("format", path.string() + ": not a readable PNG");
  }
  png_init_io(png, file.f);
  png_read_info(png, info);
  if (png_get_color_type(png, info) != PNG_COLOR_TYPE_GRAY || png_get_bit_depth(png, info) != 8) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw Error("format", path.string() + ": expected 8-bit grayscale");
  }
  img.width = static_cast<int>(png_get_image_width(png, info));
  img.height = static_cast<int>(png_get_image_height(png, info));
  img.pixels.resize(static_cast<std::size_t>(img.width * img.height));
  for (int y = 0; y < img.height; ++y) {
    png_read_row(png, img.pixels.data() + static_cast<std::size_t>(y * img.width), nullptr);
  }
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return img;
}

Trajectory replay_trajectory(const EpisodeSpec& spec, const EpisodeRecord& record) {
  if (spec_hash(spec) != record.spec_hash) {
    throw Error("replay", "spec '" + spec.name + "' does not match the recorded spec hash");
  }
  Environment env(spec);
  Trajectory t;
  t.goal = env.goal();
  auto snapshot = [&] {
    t.robot.push_back(env.robot().pose.position());
    std::vector<Vec2> agents;
    for (const HumanAgent& a : env.agents()) agents.push_back(a.position);
    t.agents.push_back(std::move(agents));
  };
  snapshot();
  for (std::size_t k = 0; k < record.steps.size(); ++k) {
    if (env.done()) throw Error("replay", "episode ended before step " + std::to_string(k));
    env.step(dequantize(record.steps[k].a));
    snapshot();
  }
  t.outcome = env.outcome();
  return t;
}

std::string trajectory_svg(const MapModel& map, const Trajectory& traj) {
  const Rect& b = map.bounds();
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" viewBox=\""
    << num(b.xmin) << ' ' << num(-b.ymax) << ' ' << num(b.width()) << ' ' << num(b.height()) << "\">\n";
  s << "<g transform=\"scale(1,-1)\">\n";
  s << "<rect x=\"" << num(b.xmin) << "\" y=\"" << num(b.ymin) << "\" width=\"" << num(b.width())
    << "\" height=\"" << num(b.height()) << "\" fill=\"white\" stroke=\"black\" stroke-width=\"0.1\"/>\n";
  for (const Polygon& poly : map.polygons()) {
    s << "<polygon fill=\"#555555\" points=\"";
    for (const Vec2& v : poly) s << num(v.x) << ',' << num(v.y) << ' ';
    s << "\"/>\n";
  }
  for (const auto& step : traj.agents) {
    for (const Vec2& a : step) {
      s << "<circle class=\"agent\" cx=\"" << num(a.x) << "\" cy=\"" << num(a.y)
        << "\" r=\"0.08\" fill=\"#aaaaaa\" fill-opacity=\"0.5\"/>\n";
    }
  }
  s << "<circle class=\"goal\" cx=\"" << num(traj.goal.x) << "\" cy=\"" << num(traj.goal.y)
    << "\" r=\"" << num(kGoalRadius) << "\" fill=\"none\" stroke=\"#2ca02c\" stroke-width=\"0.05\"/>\n";
  const bool success = traj.outcome == Outcome::success;
  s << "<polyline class=\"robot\" data-outcome=\"" << to_string(traj.outcome) << "\" fill=\"none\" stroke=\""
    << (success ? kSuccessColor : kFailureColor) << "\" stroke-width=\"0.08\" points=\"";
  for (const Vec2& p : traj.robot) s << num(p.x) << ',' << num(p.y) << ' ';
  s << "\"/>\n</g>\n</svg>\n";
  return s.str();
}

std::filesystem::path specs_sidecar(const std::filesystem::path& record) {
  return record.string() + ".specs.json";
}

void write_specs_sidecar(const std::filesystem::path& record, const std::vector<EpisodeSpec>& specs) {
  nlohmann::json arr = nlohmann::json::array();
  for (const EpisodeSpec& s : specs) arr.push_back(nlohmann::json::parse(spec_to_json(s)));
  std::ofstream out(specs_sidecar(record));
  out << arr.dump(1) << '\n';
  if (!out) throw Error("io", specs_sidecar(record).string() + ": write failed");
}

std::vector<EpisodeSpec> read_specs_sidecar(const std::filesystem::path& record) {
  const auto path = specs_sidecar(record);
  std::ifstream in(path);
  if (!in) throw Error("io", path.string() + ": cannot open (trajectory mode needs the specs sidecar)");
  std::stringstream buf;
  buf << in.rdbuf();
  const nlohmann::json arr = nlohmann::json::parse(buf.str(), nullptr, false);
  if (!arr.is_array()) throw Error("schema", path.string() + ": expected an array of scenario objects");
  std::vector<EpisodeSpec> specs;
  for (const auto& j : arr) specs.push_back(spec_from_json(j.dump()));
  return specs;
}

std::vector<std::filesystem::path> render_record(const std::filesystem::path& record,
                                                 const std::filesystem::path& out_dir,
                                                 bool trajectory) {
  if (!std::filesystem::exists(record)) throw Error("io", record.string() + ": record file not found");
  const ReadResult rr = read_dataset(record);
  std::filesystem::create_directories(out_dir);
  std::vector<std::filesystem::path> written;
  char name[64];

  std::vector<EpisodeSpec> specs;
  if (trajectory || std::filesystem::exists(specs_sidecar(record))) specs = read_specs_sidecar(record);
  if (trajectory && specs.size() < rr.data.episodes.size()) {
    throw Error("schema", specs_sidecar(record).string() + ": fewer specs than recorded episodes");
  }

  for (std::size_t e = 0; e < rr.data.episodes.size(); ++e) {
    const EpisodeRecord& ep = rr.data.episodes[e];
    if (trajectory) {
      const EpisodeSpec& spec = specs[e];
      const Trajectory t = replay_trajectory(spec, ep);
      Environment env(spec);
      std::snprintf(name, sizeof name, "episode_%04zu.svg", e);
      const auto path = out_dir / name;
      std::ofstream out(path);
      out << trajectory_svg(env.map(), t);
      if (!out) throw Error("io", path.string() + ": write failed");
      written.push_back(path);
      continue;
    }
    const LidarConfig lidar = e < specs.size() ? specs[e].lidar : LidarConfig{};
    const RingsConfig rings = e < specs.size() ? specs[e].rings : RingsConfig{};
    for (std::size_t k = 0; k < ep.steps.size(); ++k) {
      std::snprintf(name, sizeof name, "frame_%04zu_%05zu.png", e, k);
      const auto path = out_dir / name;
      write_png(path, render_frame(ep.steps[k].s_l, lidar, rings));
      written.push_back(path);
    }
  }
  return written;
}

}  // namespace navsim
