#include "navsim/representations.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "navsim/error.hpp"
#include "navsim/simd/kernels.hpp"

namespace navsim {

void RingsConfig::validate() const {
  if (n_angular < 1 || n_radial < 1) throw Error("invalid-config", "rings dimensions must be >= 1");
  if (!(r_min > 0.0) || !(r_min < r_max)) throw Error("invalid-config", "rings need 0 < r_min < r_max");
}

std::vector<double> RingsConfig::edges() const {
  std::vector<double> e(static_cast<std::size_t>(n_radial) + 1);
  const double ratio = r_max / r_min;
  for (int k = 0; k <= n_radial; ++k) {
    e[static_cast<std::size_t>(k)] = r_min * std::pow(ratio, static_cast<double>(k) / n_radial);
  }
  e.back() = r_max;
  return e;
}

std::vector<float> normalize_1d(const Scan& scan, double max_range) {
  std::vector<float> out(scan.ranges.size());
  std::transform(scan.ranges.begin(), scan.ranges.end(), out.begin(),
                 [max_range](double r) { return static_cast<float>(r / max_range); });
  return out;
}

std::optional<int> radial_bin(double distance, const RingsConfig& cfg) {
  if (distance >= cfg.r_max) return std::nullopt;
  if (distance < cfg.r_min) return 0;
  const double log_step = std::log(cfg.r_max / cfg.r_min) / cfg.n_radial;
  int k = static_cast<int>(std::floor(std::log(distance / cfg.r_min) / log_step));
  k = std::clamp(k, 0, cfg.n_radial - 1);
  // The logarithm can land one bin off right at an edge; settle against the
  // edge values themselves so the bins partition [r_min, r_max) exactly.
  const double ratio = cfg.r_max / cfg.r_min;
  auto edge = [&](int i) {
    return i >= cfg.n_radial ? cfg.r_max : cfg.r_min * std::pow(ratio, static_cast<double>(i) / cfg.n_radial);
  };
  while (k > 0 && distance < edge(k)) --k;
  while (k + 1 < cfg.n_radial && distance >= edge(k + 1)) ++k;
  return k;
}

std::vector<int> beam_columns(const LidarConfig& lidar, const RingsConfig& cfg) {
  std::vector<int> cols(static_cast<std::size_t>(lidar.n_beams));
  const bool full_circle = lidar.angular_span == kTwoPi;
  for (int i = 0; i < lidar.n_beams; ++i) {
    int col;
    if (full_circle) {
      // Integer form avoids rounding at column boundaries.
      col = static_cast<int>((static_cast<long long>(i) * cfg.n_angular) / lidar.n_beams);
    } else {
      const double angle = lidar.beam_angle(i);
      col = static_cast<int>(std::floor(angle / kTwoPi * cfg.n_angular + 1e-9));
    }
    cols[static_cast<std::size_t>(i)] = std::clamp(col, 0, cfg.n_angular - 1);
  }
  return cols;
}

RingsGrid rings_encode(const Scan& scan, const LidarConfig& lidar, const RingsConfig& cfg) {
  RingsGrid grid{cfg.n_angular, cfg.n_radial,
                 std::vector<float>(static_cast<std::size_t>(cfg.n_angular * cfg.n_radial), rings::kUnknown)};

  constexpr double kNoBeam = std::numeric_limits<double>::infinity();
  std::vector<double> hit(static_cast<std::size_t>(cfg.n_angular), kNoBeam);
  const std::vector<int> cols = beam_columns(lidar, cfg);
  const std::size_t n = std::min(scan.ranges.size(), cols.size());
  for (std::size_t i = 0; i < n; ++i) {
    double& h = hit[static_cast<std::size_t>(cols[i])];
    h = std::min(h, scan.ranges[i]);
  }

  for (int a = 0; a < cfg.n_angular; ++a) {
    const double h = hit[static_cast<std::size_t>(a)];
    if (h == kNoBeam) continue;  // no beam in this column
    float* col = grid.cells.data() + static_cast<std::ptrdiff_t>(a) * cfg.n_radial;
    const std::optional<int> k = radial_bin(h, cfg);
    if (!k) {
      std::fill(col, col + cfg.n_radial, rings::kFree);
      continue;
    }
    std::fill(col, col + *k, rings::kFree);
    col[*k] = rings::kOccupied;
  }
  return grid;
}

WorldModelError worldmodel_error(std::span<const PredictedState> predicted,
                                 std::span<const PredictedState> truth) {
  if (predicted.size() != truth.size()) {
    throw Error("shape-mismatch", "prediction and truth sequences differ in length");
  }
  const auto& kernels = simd::active_kernels();
  double lidar_sum = 0.0, sr_sum = 0.0;
  std::size_t lidar_count = 0, sr_count = 0;
  for (std::size_t t = 0; t < truth.size(); ++t) {
    const PredictedState& p = predicted[t];
    const PredictedState& q = truth[t];
    if (p.s_l.size() != q.s_l.size() || p.s_r.size() != q.s_r.size()) {
      throw Error("shape-mismatch", "step " + std::to_string(t) + " has mismatched shapes");
    }
    lidar_sum += kernels.sum_sq_diff(p.s_l.data(), q.s_l.data(), p.s_l.size());
    sr_sum += kernels.sum_sq_diff(p.s_r.data(), q.s_r.data(), p.s_r.size());
    lidar_count += p.s_l.size();
    sr_count += p.s_r.size();
  }
  WorldModelError e;
  if (lidar_count > 0) e.lidar = lidar_sum / static_cast<double>(lidar_count);
  if (sr_count > 0) e.goal_velocity = sr_sum / static_cast<double>(sr_count);
  return e;
}

}  // namespace navsim
