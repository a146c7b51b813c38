#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>

#include "navsim/simd/kernels.hpp"

#define NAVSIM_AVX2 __attribute__((target("avx2")))

namespace navsim::simd::avx2 {

namespace {

// Four rays per lane group; segment/circle data broadcast.
NAVSIM_AVX2 inline __m256d cast4(__m256d dx, __m256d dy, double ox, double oy,
                                 const SegmentView& seg, const CircleView& circ,
                                 double max_range) {
  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  __m256d best = _mm256_set1_pd(max_range);

  for (std::size_t k = 0; k < seg.count; ++k) {
    const __m256d wx = _mm256_set1_pd(seg.ax[k] - ox);
    const __m256d wy = _mm256_set1_pd(seg.ay[k] - oy);
    const __m256d ex = _mm256_set1_pd(seg.ex[k]);
    const __m256d ey = _mm256_set1_pd(seg.ey[k]);
    const __m256d denom = _mm256_sub_pd(_mm256_mul_pd(dx, ey), _mm256_mul_pd(dy, ex));
    const __m256d nt = _mm256_sub_pd(_mm256_mul_pd(wx, ey), _mm256_mul_pd(wy, ex));
    const __m256d ns = _mm256_sub_pd(_mm256_mul_pd(wx, dy), _mm256_mul_pd(wy, dx));
    const __m256d t = _mm256_div_pd(nt, denom);
    const __m256d s = _mm256_div_pd(ns, denom);
    __m256d ok = _mm256_cmp_pd(denom, zero, _CMP_NEQ_OQ);
    ok = _mm256_and_pd(ok, _mm256_cmp_pd(t, zero, _CMP_GE_OQ));
    ok = _mm256_and_pd(ok, _mm256_cmp_pd(s, zero, _CMP_GE_OQ));
    ok = _mm256_and_pd(ok, _mm256_cmp_pd(s, one, _CMP_LE_OQ));
    ok = _mm256_and_pd(ok, _mm256_cmp_pd(t, best, _CMP_LT_OQ));
    best = _mm256_blendv_pd(best, t, ok);
  }

  for (std::size_t k = 0; k < circ.count; ++k) {
    const double fxs = ox - circ.cx[k];
    const double fys = oy - circ.cy[k];
    const double ccs = fxs * fxs + fys * fys - circ.r[k] * circ.r[k];
    if (ccs <= 0.0) {
      best = zero;
      continue;
    }
    const __m256d fx = _mm256_set1_pd(fxs);
    const __m256d fy = _mm256_set1_pd(fys);
    const __m256d cc = _mm256_set1_pd(ccs);
    const __m256d b = _mm256_add_pd(_mm256_mul_pd(fx, dx), _mm256_mul_pd(fy, dy));
    const __m256d disc = _mm256_sub_pd(_mm256_mul_pd(b, b), cc);
    const __m256d has = _mm256_cmp_pd(disc, zero, _CMP_GE_OQ);
    // sqrt of a negative discriminant is masked out below.
    const __m256d sq = _mm256_sqrt_pd(_mm256_and_pd(disc, has));
    const __m256d nb = _mm256_sub_pd(zero, b);
    const __m256d t1 = _mm256_sub_pd(nb, sq);
    const __m256d t2 = _mm256_add_pd(nb, sq);
    const __m256d t = _mm256_blendv_pd(t2, t1, _mm256_cmp_pd(t1, zero, _CMP_GE_OQ));
    __m256d ok = _mm256_and_pd(has, _mm256_cmp_pd(t, zero, _CMP_GE_OQ));
    ok = _mm256_and_pd(ok, _mm256_cmp_pd(t, best, _CMP_LT_OQ));
    best = _mm256_blendv_pd(best, t, ok);
  }
  return best;
}

}  // namespace

NAVSIM_AVX2 void cast_rays(const RayFan& rays, const SegmentView& seg,
                           const CircleView& circ, double max_range, double* out) {
  std::size_t i = 0;
  for (; i + 4 <= rays.count; i += 4) {
    const __m256d dx = _mm256_loadu_pd(rays.dx + i);
    const __m256d dy = _mm256_loadu_pd(rays.dy + i);
    _mm256_storeu_pd(out + i, cast4(dx, dy, rays.ox, rays.oy, seg, circ, max_range));
  }
  if (i < rays.count) {
    // Tail: pad with copies of the last ray, store only the valid lanes.
    alignas(32) double dxp[4], dyp[4], res[4];
    for (std::size_t j = 0; j < 4; ++j) {
      const std::size_t src = i + j < rays.count ? i + j : rays.count - 1;
      dxp[j] = rays.dx[src];
      dyp[j] = rays.dy[src];
    }
    _mm256_store_pd(res, cast4(_mm256_load_pd(dxp), _mm256_load_pd(dyp), rays.ox, rays.oy,
                               seg, circ, max_range));
    for (std::size_t j = 0; i + j < rays.count; ++j) out[i + j] = res[j];
  }
}

NAVSIM_AVX2 double sum_sq_diff(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double total = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < n; ++i) {
    const double d = a[i] - b[i];
    total += d * d;
  }
  return total;
}

}  // namespace navsim::simd::avx2

#endif
