#include <doctest.h>

#include <cstring>
#include <vector>

#include "navsim/geometry.hpp"
#include "navsim/rng.hpp"
#include "navsim/simd/kernels.hpp"
#include "oracles/scenes.hpp"

using namespace navsim;
using namespace navsim::simd;

namespace {

std::vector<const KernelTable*> vector_tables() {
  std::vector<const KernelTable*> out;
  for (Isa isa : {Isa::avx2, Isa::neon}) {
    if (const KernelTable* t = kernels_for(isa)) out.push_back(t);
  }
  return out;
}

struct Soa {
  std::vector<double> ax, ay, ex, ey, cx, cy, r, dx, dy;
};

Soa random_soa(Rng& rng, std::size_t n_seg, std::size_t n_circ, std::size_t n_rays) {
  Soa s;
  for (std::size_t i = 0; i < n_seg; ++i) {
    s.ax.push_back(rng.uniform(-5, 5));
    s.ay.push_back(rng.uniform(-5, 5));
    s.ex.push_back(rng.uniform(-3, 3));
    s.ey.push_back(rng.uniform(-3, 3));
  }
  for (std::size_t i = 0; i < n_circ; ++i) {
    s.cx.push_back(rng.uniform(-5, 5));
    s.cy.push_back(rng.uniform(-5, 5));
    s.r.push_back(rng.uniform(0.05, 1.0));
  }
  for (std::size_t i = 0; i < n_rays; ++i) {
    const double a = rng.uniform(-kPi, kPi);
    s.dx.push_back(std::cos(a));
    s.dy.push_back(std::sin(a));
  }
  return s;
}

}  // namespace

TEST_CASE("scalar kernels are always available") {
  REQUIRE(kernels_for(Isa::scalar) != nullptr);
  CHECK(kernels_for(Isa::scalar)->isa == Isa::scalar);
  CHECK(kernels_for(detect_isa()) != nullptr);
}

TEST_CASE("vector ray kernels reproduce the scalar kernel bit for bit") {
  const auto tables = vector_tables();
  if (tables.empty()) MESSAGE("no vector ISA on this machine; only the scalar kernel is exercised");
  Rng rng(2024);
  const KernelTable* ref = kernels_for(Isa::scalar);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n_seg = static_cast<std::size_t>(rng.uniform_int(0, 40));
    const std::size_t n_circ = static_cast<std::size_t>(rng.uniform_int(0, 15));
    const std::size_t n_rays = static_cast<std::size_t>(rng.uniform_int(1, 37));  // exercises tails
    const Soa s = random_soa(rng, n_seg, n_circ, n_rays);
    const RayFan fan{rng.uniform(-4, 4), rng.uniform(-4, 4), s.dx.data(), s.dy.data(), n_rays};
    const SegmentView seg{s.ax.data(), s.ay.data(), s.ex.data(), s.ey.data(), n_seg};
    const CircleView circ{s.cx.data(), s.cy.data(), s.r.data(), n_circ};
    std::vector<double> want(n_rays), got(n_rays);
    ref->cast_rays(fan, seg, circ, 25.0, want.data());
    for (const KernelTable* t : tables) {
      t->cast_rays(fan, seg, circ, 25.0, got.data());
      CHECK(std::memcmp(want.data(), got.data(), n_rays * sizeof(double)) == 0);
    }
  }
}

TEST_CASE("vector sum_sq_diff agrees with the scalar kernel") {
  Rng rng(3);
  const KernelTable* ref = kernels_for(Isa::scalar);
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 1080u, 4096u, 4099u}) {
    std::vector<double> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = rng.uniform(-1, 1);
      b[i] = rng.uniform(-1, 1);
    }
    const double want = ref->sum_sq_diff(a.data(), b.data(), n);
    for (const KernelTable* t : vector_tables()) {
      CHECK(t->sum_sq_diff(a.data(), b.data(), n) == doctest::Approx(want).epsilon(1e-13));
    }
  }
}

TEST_CASE("raycast_scan is identical under every available ISA") {
  const Isa original = active_kernels().isa;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto sc = testing_support::random_scene(seed);
    REQUIRE(set_active_isa(Isa::scalar));
    const Scan want = raycast_scan(sc.map, sc.circles, sc.pose, LidarConfig{});
    for (const KernelTable* t : vector_tables()) {
      REQUIRE(set_active_isa(t->isa));
      CHECK(raycast_scan(sc.map, sc.circles, sc.pose, LidarConfig{}).ranges == want.ranges);
    }
  }
  set_active_isa(original);
}

TEST_CASE("unavailable ISAs are rejected without changing the selection") {
  const Isa before = active_kernels().isa;
#if defined(__x86_64__)
  CHECK_FALSE(set_active_isa(Isa::neon));
#else
  CHECK_FALSE(set_active_isa(Isa::avx2));
#endif
  CHECK(active_kernels().isa == before);
}
