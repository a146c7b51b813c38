#if defined(__aarch64__)

#include <arm_neon.h>

#include "navsim/simd/kernels.hpp"

namespace navsim::simd::neon {

namespace {

inline uint64x2_t not_mask(uint64x2_t m) {
  return vreinterpretq_u64_u32(vmvnq_u32(vreinterpretq_u32_u64(m)));
}

inline float64x2_t cast2(float64x2_t dx, float64x2_t dy, double ox, double oy,
                         const SegmentView& seg, const CircleView& circ, double max_range) {
  const float64x2_t zero = vdupq_n_f64(0.0);
  const float64x2_t one = vdupq_n_f64(1.0);
  float64x2_t best = vdupq_n_f64(max_range);

  for (std::size_t k = 0; k < seg.count; ++k) {
    const float64x2_t wx = vdupq_n_f64(seg.ax[k] - ox);
    const float64x2_t wy = vdupq_n_f64(seg.ay[k] - oy);
    const float64x2_t ex = vdupq_n_f64(seg.ex[k]);
    const float64x2_t ey = vdupq_n_f64(seg.ey[k]);
    const float64x2_t denom = vsubq_f64(vmulq_f64(dx, ey), vmulq_f64(dy, ex));
    const float64x2_t nt = vsubq_f64(vmulq_f64(wx, ey), vmulq_f64(wy, ex));
    const float64x2_t ns = vsubq_f64(vmulq_f64(wx, dy), vmulq_f64(wy, dx));
    const float64x2_t t = vdivq_f64(nt, denom);
    const float64x2_t s = vdivq_f64(ns, denom);
    uint64x2_t ok = not_mask(vceqq_f64(denom, zero));
    ok = vandq_u64(ok, vcgeq_f64(t, zero));
    ok = vandq_u64(ok, vcgeq_f64(s, zero));
    ok = vandq_u64(ok, vcleq_f64(s, one));
    ok = vandq_u64(ok, vcltq_f64(t, best));
    best = vbslq_f64(ok, t, best);
  }

  for (std::size_t k = 0; k < circ.count; ++k) {
    const double fxs = ox - circ.cx[k];
    const double fys = oy - circ.cy[k];
    const double ccs = fxs * fxs + fys * fys - circ.r[k] * circ.r[k];
    if (ccs <= 0.0) {
      best = zero;
      continue;
    }
    const float64x2_t b = vaddq_f64(vmulq_f64(vdupq_n_f64(fxs), dx), vmulq_f64(vdupq_n_f64(fys), dy));
    const float64x2_t disc = vsubq_f64(vmulq_f64(b, b), vdupq_n_f64(ccs));
    const uint64x2_t has = vcgeq_f64(disc, zero);
    const float64x2_t sq = vsqrtq_f64(vbslq_f64(has, disc, zero));
    const float64x2_t nb = vsubq_f64(zero, b);
    const float64x2_t t1 = vsubq_f64(nb, sq);
    const float64x2_t t2 = vaddq_f64(nb, sq);
    const float64x2_t t = vbslq_f64(vcgeq_f64(t1, zero), t1, t2);
    uint64x2_t ok = vandq_u64(has, vcgeq_f64(t, zero));
    ok = vandq_u64(ok, vcltq_f64(t, best));
    best = vbslq_f64(ok, t, best);
  }
  return best;
}

}  // namespace

void cast_rays(const RayFan& rays, const SegmentView& seg, const CircleView& circ,
               double max_range, double* out) {
  std::size_t i = 0;
  for (; i + 2 <= rays.count; i += 2) {
    vst1q_f64(out + i, cast2(vld1q_f64(rays.dx + i), vld1q_f64(rays.dy + i), rays.ox, rays.oy,
                             seg, circ, max_range));
  }
  if (i < rays.count) {
    const float64x2_t r = cast2(vdupq_n_f64(rays.dx[i]), vdupq_n_f64(rays.dy[i]), rays.ox,
                                rays.oy, seg, circ, max_range);
    out[i] = vgetq_lane_f64(r, 0);
  }
}

double sum_sq_diff(const double* a, const double* b, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t d = vsubq_f64(vld1q_f64(a + i), vld1q_f64(b + i));
    acc = vaddq_f64(acc, vmulq_f64(d, d));
  }
  double total = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
  for (; i < n; ++i) {
    const double d = a[i] - b[i];
    total += d * d;
  }
  return total;
}

}  // namespace navsim::simd::neon

#endif
