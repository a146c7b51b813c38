#include <cmath>
#include <limits>

#include "navsim/simd/kernels.hpp"

namespace navsim::simd::scalar {

// Reference kernel. The vector variants mirror this operation sequence
// exactly; change both together.
void cast_rays(const RayFan& rays, const SegmentView& seg, const CircleView& circ,
               double max_range, double* out) {
  for (std::size_t i = 0; i < rays.count; ++i) {
    const double dx = rays.dx[i];
    const double dy = rays.dy[i];
    double best = max_range;

    for (std::size_t k = 0; k < seg.count; ++k) {
      const double wx = seg.ax[k] - rays.ox;
      const double wy = seg.ay[k] - rays.oy;
      const double denom = dx * seg.ey[k] - dy * seg.ex[k];
      const double nt = wx * seg.ey[k] - wy * seg.ex[k];
      const double ns = wx * dy - wy * dx;
      const double t = nt / denom;
      const double s = ns / denom;
      if (denom != 0.0 && t >= 0.0 && s >= 0.0 && s <= 1.0 && t < best) best = t;
    }

    for (std::size_t k = 0; k < circ.count; ++k) {
      const double fx = rays.ox - circ.cx[k];
      const double fy = rays.oy - circ.cy[k];
      const double cc = fx * fx + fy * fy - circ.r[k] * circ.r[k];
      const double b = fx * dx + fy * dy;
      const double disc = b * b - cc;
      if (cc <= 0.0) {
        best = 0.0;
        continue;
      }
      if (disc >= 0.0) {
        const double sq = std::sqrt(disc);
        const double t1 = -b - sq;
        const double t2 = -b + sq;
        const double t = t1 >= 0.0 ? t1 : t2;
        if (t >= 0.0 && t < best) best = t;
      }
    }
    out[i] = best;
  }
}

double sum_sq_diff(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return acc;
}

}  // namespace navsim::simd::scalar
