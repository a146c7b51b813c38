// Acceptance gate: one PASS/FAIL line per criterion; exit status 1 if any fail.

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <thread>

#include "navsim/bench.hpp"
#include "navsim/curriculum.hpp"
#include "navsim/dataset.hpp"
#include "navsim/env.hpp"
#include "navsim/eval.hpp"
#include "navsim/orca.hpp"
#include "navsim/representations.hpp"
#include "navsim/runner.hpp"
#include "navsim/scenarios.hpp"
#include "oracles/frozen.hpp"
#include "oracles/oracles.hpp"
#include "oracles/scenes.hpp"

using namespace navsim;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(const char* name, bool pass, const std::string& detail) {
  std::printf("%s %-24s %s\n", pass ? "PASS" : "FAIL", name, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

template <class... Args>
std::string fmt(const char* f, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

void throughput() {
  BenchConfig cfg;
  cfg.steps = 1000;
  cfg.agents = 5;
  cfg.polygons = 10;
  const BenchResult r = run_bench(cfg);
  report("throughput", r.steps_per_second >= 100.0 && r.seconds < 60.0,
         fmt("%.1f steps/s over %lld steps (floor 100)", r.steps_per_second, static_cast<long long>(r.steps)));
}

void reward_arithmetic() {
  bool ok = true;
  Rng rng(4);
  for (int i = 0; i < 10000; ++i) {
    const double d0 = rng.uniform(0, 20), d1 = rng.uniform(0, 20), clear = rng.uniform(-0.3, 1.0);
    const bool reached = rng.bernoulli(0.5), collided = rng.bernoulli(0.5);
    const RewardBreakdown r = compute_reward(d0, d1, reached, collided, clear);
    ok = ok && r.total == r.r_s + r.r_c + r.r_d + r.r_p;
    ok = ok && r.r_s == (reached ? 100.0 : 0.0) && r.r_c == (collided ? -25.0 : 0.0);
    ok = ok && r.r_p == d0 - d1;
  }
  const RewardBreakdown a = compute_reward(5.0, 4.9, false, false, 1.0);
  const RewardBreakdown b = compute_reward(1.0, 0.4, true, false, 0.5);
  const RewardBreakdown c = compute_reward(2.0, 2.05, false, true, 0.05);
  const bool examples = a.r_s == 0.0 && a.r_c == 0.0 && a.r_d == 0.0 && a.r_p == 5.0 - 4.9 &&
                        b.r_s == 100.0 && b.r_p == 1.0 - 0.4 && b.total == 100.0 + (1.0 - 0.4) &&
                        c.r_c == -25.0 && c.r_d == -1.0 && c.r_p == 2.0 - 2.05 &&
                        c.total == -25.0 + -1.0 + (2.0 - 2.05);
  report("reward-arithmetic", ok && examples, fmt("1e4 transitions %s, worked examples %s", ok ? "exact" : "MISMATCH",
                                                  examples ? "exact" : "MISMATCH"));
}

bool rings_column_ok(const RingsGrid& g, int a) {
  int r = 0;
  while (r < g.n_radial && g.at(a, r) == rings::kFree) ++r;
  if (r == g.n_radial) return true;
  if (g.at(a, r) == rings::kOccupied) ++r;
  for (; r < g.n_radial; ++r) {
    if (g.at(a, r) != rings::kUnknown) return false;
  }
  return true;
}

void rings_encoding() {
  LidarConfig lidar;
  const RingsConfig cfg;
  Rng rng(12);
  int bad_scans = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> ranges(1080);
    for (double& r : ranges) r = rng.uniform() < 0.3 ? lidar.max_range : rng.uniform(0.0, lidar.max_range);
    const RingsGrid g = rings_encode(Scan{ranges, 0}, lidar, cfg);
    bool ok = std::all_of(g.cells.begin(), g.cells.end(), [](float v) { return v == 0.0f || v == 0.5f || v == 1.0f; });
    for (int a = 0; a < g.n_angular; ++a) ok = ok && rings_column_ok(g, a);
    bad_scans += ok ? 0 : 1;
  }
  int bad_bins = 0;
  for (int i = 0; i < 10000; ++i) {
    const double d = rng.uniform(0.0, 30.0);
    bad_bins += radial_bin(d, cfg).value_or(-1) == oracle::radial_bin_linear(d, cfg) ? 0 : 1;
  }
  LidarConfig aligned;
  aligned.n_beams = 64;
  int bad_rot = 0;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> ranges(64), rotated(64);
    for (double& r : ranges) r = rng.uniform() < 0.2 ? aligned.max_range : rng.uniform(0.0, aligned.max_range);
    for (int i = 0; i < 64; ++i) rotated[(i + 1) % 64] = ranges[i];
    const RingsGrid g = rings_encode(Scan{ranges, 0}, aligned, cfg);
    const RingsGrid h = rings_encode(Scan{rotated, 0}, aligned, cfg);
    for (int a = 0; a < 64; ++a) {
      for (int r = 0; r < 64; ++r) bad_rot += h.at((a + 1) % 64, r) == g.at(a, r) ? 0 : 1;
    }
  }
  report("rings-encoding", bad_scans == 0 && bad_bins == 0 && bad_rot == 0,
         fmt("bad scans %d/1000, bin mismatches %d/10000, rotation mismatches %d", bad_scans, bad_bins, bad_rot));
}

void raycast() {
  LidarConfig cfg;
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto sc = testing_support::random_scene(1000 + seed);
    const oracle::Scene os = oracle::scene_of(sc.map, sc.circles);
    const Scan s = raycast_scan(sc.map, sc.circles, sc.pose, cfg);
    for (int i = 0; i < cfg.n_beams; ++i) {
      const double want = oracle::march_range(os, sc.pose.position(), sc.pose.theta + cfg.beam_angle(i), cfg.max_range);
      worst = std::max(worst, std::abs(s.ranges[static_cast<std::size_t>(i)] - want));
    }
  }
  const MapModel empty("e", kDefaultBounds, {});
  LidarConfig eight;
  eight.n_beams = 8;
  const Circle c{{5.0, 0.0}, 0.3};
  const Scan axis = raycast_scan(empty, {}, Pose{0, 0, 0}, eight);
  const Scan circ = raycast_scan(empty, std::span(&c, 1), Pose{0, 0, 0}, eight);
  const double closed = std::max({std::abs(axis.ranges[0] - 10.0), std::abs(axis.ranges[2] - 10.0),
                                  std::abs(axis.ranges[1] - 10.0 * std::sqrt(2.0)),
                                  std::abs(axis.ranges[3] - 10.0 * std::sqrt(2.0)), std::abs(circ.ranges[0] - 4.7)});
  report("raycast", worst <= 1e-3 && closed <= 1e-6,
         fmt("1000 scenes x 1080 beams max |d| %.3g m (<= 1e-3), closed forms %.3g m (<= 1e-6)", worst, closed));
}

void orca() {
  const OrcaParams params;
  constexpr double dt = 0.2;
  const Vec2 id = orca_velocity(OrcaBody{{0, 0}, {0, 0}, 0.3, 1.0}, {}, {}, params, {0.8, 0.0}, dt);
  const bool identity = id.x == 0.8 && id.y == 0.0;

  Rng rng(31);
  double worst = 0.0;
  const auto rand_vel = [&] {
    const double r = std::sqrt(rng.uniform());
    const double t = rng.uniform(-kPi, kPi);
    return Vec2{std::cos(t), std::sin(t)} * r;
  };
  for (int i = 0; i < 100; ++i) {
    const double ang = rng.uniform(-kPi, kPi);
    const double dist = rng.uniform(0.7, 6.0);
    const Vec2 pa{rng.uniform(-3, 3), rng.uniform(-3, 3)};
    const OrcaBody a{pa, rand_vel(), 0.3, 1.0};
    const OrcaBody b{pa + Vec2{std::cos(ang), std::sin(ang)} * dist, rand_vel(), 0.3, 1.0};
    const Vec2 pref = rand_vel();
    const Vec2 got = orca_velocity(a, std::span(&b, 1), {}, params, pref, dt);
    const oracle::HalfPlane h = oracle::orca_half_plane(a.position, a.velocity, a.radius, b.position, b.velocity,
                                                        b.radius, params.time_horizon_agents);
    worst = std::max(worst, norm(got - oracle::sampled_lp(std::span(&h, 1), a.max_speed, pref)));
  }

  // Eight agents on the radius-2 circle, antipodal goals.
  const int n = 8;
  std::vector<OrcaBody> agents;
  std::vector<Vec2> goals;
  for (int k = 0; k < n; ++k) {
    const Vec2 p = Vec2{std::cos(kTwoPi * k / n), std::sin(kTwoPi * k / n)} * 2.0;
    agents.push_back(OrcaBody{p, {}, 0.3, 1.0});
    goals.push_back(p * -1.0);
  }
  int overlaps = 0;
  int steps = 0;
  bool arrived = false;
  for (; steps < 500 && !arrived; ++steps) {
    std::vector<Vec2> next(n);
    for (int k = 0; k < n; ++k) {
      std::vector<OrcaBody> others;
      for (int j = 0; j < n; ++j) {
        if (j != k) others.push_back(agents[j]);
      }
      next[k] = steer_to_goal(agents[k], others, {}, params, goals[k], 1.0, dt);
    }
    for (int k = 0; k < n; ++k) {
      agents[k].velocity = next[k];
      agents[k].position += next[k] * dt;
    }
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) overlaps += norm(agents[i].position - agents[j].position) < 0.6 ? 1 : 0;
    }
    arrived = true;
    for (int k = 0; k < n; ++k) arrived = arrived && norm(agents[k].position - goals[k]) < 0.05;
  }
  report("orca", identity && worst <= 1e-2 && arrived && overlaps == 0,
         fmt("circle: %s in %d steps, %d overlaps; oracle max dev %.3g m/s (<= 1e-2); identity %s",
             arrived ? "all at goal" : "NOT at goal", steps, overlaps, worst, identity ? "exact" : "MISMATCH"));
}

std::string transcript(const EpisodeSpec& spec, const std::vector<Action>& actions) {
  std::ostringstream out;
  Environment env(spec);
  out << transcript_reset_line(env.observation()) << '\n';
  for (const Action& a : actions) {
    if (env.done()) break;
    const auto q = quantize(a);
    out << transcript_step_line(q, env.step(dequantize(q))) << '\n';
  }
  return out.str();
}

void determinism() {
  const std::vector<EpisodeSpec> suite = make_validation_suite();
  int mismatches = 0;
  for (std::uint64_t k : {0ull, 13ull, 57ull, 99ull}) {
    Rng rng(k);
    std::vector<Action> actions;
    for (int i = 0; i < 150; ++i) actions.emplace_back(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
    const std::string a = transcript(suite[k], actions);
    const std::string b = transcript(suite[k], actions);
    std::string c;
    std::thread([&] { c = transcript(suite[k], actions); }).join();
    mismatches += (a == b ? 0 : 1) + (a == c ? 0 : 1);
  }
  std::vector<SuiteEntry> entries;
  for (std::size_t k = 0; k < 6; ++k) entries.push_back({std::to_string(k), "validation", suite[k]});
  const auto orca = [] { return make_policy("orca"); };
  const bool threads = run_eval(entries, orca, 3, 9, 1) == run_eval(entries, orca, 3, 9, 3);
  const std::uint64_t h = suite_hash(suite);
  report("determinism", mismatches == 0 && threads && h == frozen::kValidationSuiteHash,
         fmt("transcript mismatches %d, eval 1 vs 3 threads %s, validation hash %016llx %s", mismatches,
             threads ? "equal" : "DIFFER", static_cast<unsigned long long>(h),
             h == frozen::kValidationSuiteHash ? "stable" : "CHANGED"));
}

void curriculum() {
  int violations = 0;
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    Rng outcomes(seed);
    Rng rng(seed + 100);
    Difficulty d;
    const double p_success = 0.3 + 0.2 * static_cast<double>(seed);
    for (int i = 0; i < 10000; ++i) {
      const EpisodeResult r = outcomes.bernoulli(p_success) ? EpisodeResult::success : EpisodeResult::failure;
      const Difficulty next = curriculum_update(d, r, rng);
      const bool bounded = next.n_agents >= 0 && next.n_agents <= 5 && next.n_polygons >= 0 && next.n_polygons <= 10;
      const int change = std::abs(next.n_agents - d.n_agents) + std::abs(next.n_polygons - d.n_polygons);
      const bool saturated = r == EpisodeResult::success ? d == Difficulty{5, 10} : d == Difficulty{0, 0};
      violations += bounded && change == (saturated ? 0 : 1) ? 0 : 1;
      d = next;
    }
  }
  report("curriculum", violations == 0, fmt("3 x 1e4 episodes, %d bound or step violations", violations));
}

void dataset() {
  const fs::path dir = fs::temp_directory_path() / ("navsim_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  Rng rng(5);
  int round_trip = 0, sizes = 0;
  for (int t = 0; t < 50; ++t) {
    Dataset d;
    d.dt = static_cast<float>(rng.uniform(0.01, 1.0));
    std::vector<std::uint64_t> lengths;
    for (int e = static_cast<int>(rng.uniform_int(0, 4)); e > 0; --e) {
      EpisodeRecord ep;
      ep.spec_hash = rng.next_u64();
      for (int n = static_cast<int>(rng.uniform_int(0, 5)); n > 0; --n) {
        StepRecord s;
        for (float& v : s.s_l) v = static_cast<float>(rng.uniform());
        for (float& v : s.s_r) v = static_cast<float>(rng.uniform(-5, 5));
        for (float& v : s.a) v = static_cast<float>(rng.uniform(-1, 1));
        s.r = static_cast<float>(rng.uniform(-30, 110));
        ep.steps.push_back(s);
      }
      if (!ep.steps.empty()) ep.steps.back().done = rng.bernoulli(0.5);
      lengths.push_back(ep.steps.size());
      d.episodes.push_back(std::move(ep));
    }
    write_dataset(dir / "rt.nrd", d);
    const ReadResult r = read_dataset(dir / "rt.nrd");
    round_trip += r.data == d && !r.truncation ? 0 : 1;
    sizes += fs::file_size(dir / "rt.nrd") == nrd_file_size(lengths) ? 0 : 1;
  }
  DatasetConfig cfg;
  cfg.total_steps = 300;
  cfg.seed = 11;
  cfg.max_steps = 120;
  write_dataset(dir / "a.nrd", generate_training_dataset(cfg));
  write_dataset(dir / "b.nrd", generate_training_dataset(cfg));
  const auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  const bool same = slurp(dir / "a.nrd") == slurp(dir / "b.nrd");
  const ReadResult gen = read_dataset(dir / "a.nrd");
  std::uint64_t steps = 0;
  for (const auto& ep : gen.data.episodes) steps += ep.steps.size();
  const bool dt = gen.data.dt == 0.2f;
  fs::remove_all(dir);
  report("dataset", round_trip == 0 && sizes == 0 && same && dt && steps == 300,
         fmt("round trips failed %d/50, size formula failed %d/50, regeneration %s, dt %.7g, %llu steps",
             round_trip, sizes, same ? "byte-identical" : "DIFFERS", static_cast<double>(gen.data.dt),
             static_cast<unsigned long long>(steps)));
}

void worldmodel() {
  Rng rng(21);
  std::vector<PredictedState> truth, shifted, pred;
  for (int t = 0; t < 4; ++t) {
    PredictedState s, p;
    for (int i = 0; i < 1080; ++i) s.s_l.push_back(rng.uniform()), p.s_l.push_back(rng.uniform());
    for (int i = 0; i < 5; ++i) s.s_r.push_back(rng.uniform(-2, 2)), p.s_r.push_back(rng.uniform(-2, 2));
    truth.push_back(s);
    pred.push_back(p);
  }
  shifted = truth;
  for (auto& s : shifted) {
    for (double& v : s.s_l) v += 0.1;
    for (double& v : s.s_r) v += 0.1;
  }
  const WorldModelError zero = worldmodel_error(truth, truth);
  const WorldModelError off = worldmodel_error(shifted, truth);
  const WorldModelError e = worldmodel_error(pred, truth);
  std::vector<std::vector<double>> pl, tl, pr, tr;
  for (int t = 0; t < 4; ++t) {
    pl.push_back(pred[t].s_l);
    tl.push_back(truth[t].s_l);
    pr.push_back(pred[t].s_r);
    tr.push_back(truth[t].s_r);
  }
  const double dev = std::max(std::abs(e.lidar - oracle::mse(pl, tl)), std::abs(e.goal_velocity - oracle::mse(pr, tr)));
  const double off_dev = std::max(std::abs(off.lidar - 0.01), std::abs(off.goal_velocity - 0.01));
  report("worldmodel-error", zero.lidar == 0.0 && zero.goal_velocity == 0.0 && off_dev <= 1e-12 && dev <= 1e-12,
         fmt("identical %g/%g, +0.1 offset off by %.3g, oracle deviation %.3g (<= 1e-12)", zero.lidar,
             zero.goal_velocity, off_dev, dev));
}

void eval_sanity() {
  const std::vector<SuiteEntry> suite = builtin_suite();
  std::vector<SuiteEntry> sevens, nines;
  for (const SuiteEntry& e : suite) {
    if (e.scenario_id == "7") sevens.push_back(e);
    if (e.scenario_id == "9") nines.push_back(e);
  }
  const auto factory = [](const char* name) { return [name] { return make_policy(name); }; };
  const EvalReport straight = run_eval(sevens, factory("straight"), 100, 0);
  const EvalReport stop = run_eval(suite, factory("stop"), 10, 0);
  const EvalReport orca = run_eval(nines, factory("orca"), 100, 0);
  double straight_min = 1.0, stop_max = 0.0, orca_min = 1.0;
  for (const EvalRow& r : straight.rows) straight_min = std::min(straight_min, r.success_rate());
  for (const EvalRow& r : stop.rows) stop_max = std::max(stop_max, r.success_rate());
  for (const EvalRow& r : orca.rows) orca_min = std::min(orca_min, r.success_rate());
  report("eval-sanity",
         suite.size() == 27 && sevens.size() == 3 && straight_min == 1.0 && stop_max == 0.0 && orca_min > 0.9,
         fmt("%zu scenarios; straight on 7: min %.3f; stop: max %.3f; orca on 9: min %.3f (> 0.9)", suite.size(),
             straight_min, stop_max, orca_min));
}

}  // namespace

int main() {
  throughput();
  reward_arithmetic();
  rings_encoding();
  raycast();
  orca();
  determinism();
  curriculum();
  dataset();
  worldmodel();
  eval_sanity();
  std::printf("%s: %d failing\n", g_failures ? "FAIL" : "PASS", g_failures);
  return g_failures ? 1 : 0;
}
