#include <atomic>
#include <cstdlib>
#include <string>

#include "navsim/simd/kernels.hpp"

namespace navsim::simd {

namespace {

constexpr KernelTable kScalar{Isa::scalar, &scalar::cast_rays, &scalar::sum_sq_diff};
#if defined(__x86_64__) || defined(_M_X64)
constexpr KernelTable kAvx2{Isa::avx2, &avx2::cast_rays, &avx2::sum_sq_diff};
#endif
#if defined(__aarch64__)
constexpr KernelTable kNeon{Isa::neon, &neon::cast_rays, &neon::sum_sq_diff};
#endif

std::atomic<const KernelTable*> g_active{nullptr};

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
    case Isa::neon:
      return "neon";
  }
  return "unknown";
}

const KernelTable* kernels_for(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return &kScalar;
    case Isa::avx2:
#if defined(__x86_64__) || defined(_M_X64)
      __builtin_cpu_init();
      if (__builtin_cpu_supports("avx2")) return &kAvx2;
#endif
      return nullptr;
    case Isa::neon:
#if defined(__aarch64__)
      return &kNeon;
#else
      return nullptr;
#endif
  }
  return nullptr;
}

Isa detect_isa() {
  if (const char* env = std::getenv("NAVSIM_ISA")) {
    const std::string want(env);
    for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
      if (want == isa_name(isa) && kernels_for(isa) != nullptr) return isa;
    }
  }
  if (kernels_for(Isa::avx2) != nullptr) return Isa::avx2;
  if (kernels_for(Isa::neon) != nullptr) return Isa::neon;
  return Isa::scalar;
}

const KernelTable& active_kernels() {
  const KernelTable* table = g_active.load(std::memory_order_acquire);
  if (table == nullptr) {
    const KernelTable* detected = kernels_for(detect_isa());
    // First caller wins.
    g_active.compare_exchange_strong(table, detected, std::memory_order_acq_rel);
    table = g_active.load(std::memory_order_acquire);
  }
  return *table;
}

bool set_active_isa(Isa isa) {
  const KernelTable* table = kernels_for(isa);
  if (table == nullptr) return false;
  g_active.store(table, std::memory_order_release);
  return true;
}

}  // namespace navsim::simd
