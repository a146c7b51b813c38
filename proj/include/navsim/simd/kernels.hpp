#pragma once

// Data-parallel inner loops. Every kernel has a scalar reference
// implementation; vector variants are selected at runtime and must
// reproduce the scalar results (bit-exactly for the ray kernel).

#include <cstddef>
#include <span>
#include <string_view>

namespace navsim::simd {

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa);

/// Edges in structure-of-arrays form: start point (ax, ay) and edge vector (ex, ey).
struct SegmentView {
  const double* ax = nullptr;
  const double* ay = nullptr;
  const double* ex = nullptr;
  const double* ey = nullptr;
  std::size_t count = 0;
};

struct CircleView {
  const double* cx = nullptr;
  const double* cy = nullptr;
  const double* r = nullptr;
  std::size_t count = 0;
};

/// A fan of rays sharing one origin. Directions must be unit length.
struct RayFan {
  double ox = 0.0;
  double oy = 0.0;
  const double* dx = nullptr;
  const double* dy = nullptr;
  std::size_t count = 0;
};

/// out[i] = min(max_range, nearest hit distance of ray i). A ray starting
/// inside a circle reports 0.
using CastRaysFn = void (*)(const RayFan& rays, const SegmentView& segments,
                            const CircleView& circles, double max_range, double* out);

/// Sum over i of (a[i] - b[i])^2.
using SumSqDiffFn = double (*)(const double* a, const double* b, std::size_t n);

struct KernelTable {
  Isa isa;
  CastRaysFn cast_rays;
  SumSqDiffFn sum_sq_diff;
};

/// Kernels for a given ISA, or nullptr when the ISA is not compiled in or
/// not supported by the running CPU.
const KernelTable* kernels_for(Isa isa);

/// Best ISA available on this CPU, honoring the NAVSIM_ISA environment
/// variable ("scalar", "avx2", "neon") when it names a supported ISA.
Isa detect_isa();

/// Kernels used by the simulator. Selected once on first use.
const KernelTable& active_kernels();

/// Overrides the selection (benchmarks and tests). Returns false if the ISA
/// is unavailable; the previous selection is kept.
bool set_active_isa(Isa isa);

namespace scalar {
void cast_rays(const RayFan&, const SegmentView&, const CircleView&, double, double*);
double sum_sq_diff(const double*, const double*, std::size_t);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
void cast_rays(const RayFan&, const SegmentView&, const CircleView&, double, double*);
double sum_sq_diff(const double*, const double*, std::size_t);
}  // namespace avx2
#endif

#if defined(__aarch64__)
namespace neon {
void cast_rays(const RayFan&, const SegmentView&, const CircleView&, double, double*);
double sum_sq_diff(const double*, const double*, std::size_t);
}  // namespace neon
#endif

}  // namespace navsim::simd
