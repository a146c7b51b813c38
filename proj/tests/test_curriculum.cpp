#include <doctest.h>

#include <cstdlib>

#include "navsim/curriculum.hpp"

using namespace navsim;

TEST_CASE("caps and floor") {
  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    CHECK(curriculum_update({5, 10}, EpisodeResult::success, rng) == Difficulty{5, 10});
    CHECK(curriculum_update({0, 0}, EpisodeResult::failure, rng) == Difficulty{0, 0});
  }
  CHECK(Difficulty{9, -3}.clamped() == Difficulty{5, 0});
}

TEST_CASE("golden seeded draw") {
  Rng rng(0);
  CHECK(curriculum_update({2, 3}, EpisodeResult::success, rng) == Difficulty{3, 3});
}

TEST_CASE("a saturated dimension hands the step to the other one") {
  Rng rng(2);
  for (int i = 0; i < 50; ++i) {
    CHECK(curriculum_update({5, 4}, EpisodeResult::success, rng) == Difficulty{5, 5});
    CHECK(curriculum_update({3, 0}, EpisodeResult::failure, rng) == Difficulty{2, 0});
  }
}

TEST_CASE("10^4 episode streams stay in bounds with unit steps") {
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    Rng outcomes(seed);
    Rng rng(seed + 100);
    Difficulty d;
    const double p_success = 0.3 + 0.2 * static_cast<double>(seed);
    for (int i = 0; i < 10000; ++i) {
      const EpisodeResult r = outcomes.bernoulli(p_success) ? EpisodeResult::success : EpisodeResult::failure;
      const Difficulty next = curriculum_update(d, r, rng);
      CHECK(next.n_agents >= 0);
      CHECK(next.n_agents <= kMaxCurriculumAgents);
      CHECK(next.n_polygons >= 0);
      CHECK(next.n_polygons <= kMaxCurriculumPolygons);
      const int change = std::abs(next.n_agents - d.n_agents) + std::abs(next.n_polygons - d.n_polygons);
      const bool saturated = r == EpisodeResult::success ? d == Difficulty{5, 10} : d == Difficulty{0, 0};
      CHECK(change == (saturated ? 0 : 1));
      d = next;
    }
  }
}

TEST_CASE("curriculum spec reflects the difficulty") {
  const EpisodeSpec s = make_curriculum_spec({3, 7}, 42);
  CHECK(s.n_agents == 3);
  CHECK(s.map.n_polygons == 7);
  CHECK(s.seed == 42);
  CHECK(s.robot_spawn.random);
  CHECK(s.goal.random);
  CHECK(make_curriculum_spec({8, 20}, 0).n_agents == 5);
}
