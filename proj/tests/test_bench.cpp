#include <doctest.h>

#include "navsim/bench.hpp"
#include "navsim/simd/kernels.hpp"

using namespace navsim;

TEST_CASE("bench output is deterministic") {
  BenchConfig cfg;
  cfg.steps = 300;
  const BenchResult a = run_bench(cfg);
  const BenchResult b = run_bench(cfg);
  CHECK(a.steps == 300);
  CHECK(a.episodes >= 1);
  CHECK(a.output_hash == b.output_hash);
  CHECK(a.episodes == b.episodes);
  CHECK(a.steps_per_second > 0.0);

  cfg.seed = 1;
  CHECK(run_bench(cfg).output_hash != a.output_hash);
}

TEST_CASE("bench output does not depend on the kernel set") {
  BenchConfig cfg;
  cfg.steps = 200;
  const simd::Isa original = simd::active_kernels().isa;
  REQUIRE(simd::set_active_isa(simd::Isa::scalar));
  const std::uint64_t reference = run_bench(cfg).output_hash;
  for (simd::Isa isa : {simd::Isa::avx2, simd::Isa::neon}) {
    if (!simd::set_active_isa(isa)) continue;
    CHECK(run_bench(cfg).output_hash == reference);
  }
  simd::set_active_isa(original);
}
