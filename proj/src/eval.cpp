#include "navsim/eval.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdio>
#include <mutex>
#include <sstream>
#include <thread>

#include "navsim/error.hpp"
#include "navsim/rng.hpp"
#include "navsim/runner.hpp"

namespace navsim {

namespace {

std::string fmt_rate(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double mean_of(const EvalReport& r, double (EvalRow::*rate)() const) {
  if (r.rows.empty()) return 0.0;
  double sum = 0.0;
  for (const EvalRow& row : r.rows) sum += (row.*rate)();
  return sum / static_cast<double>(r.rows.size());
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

std::vector<SuiteEntry> builtin_suite() {
  std::vector<SuiteEntry> suite;
  for (TestScenario& sc : make_test_suite()) {
    suite.push_back({std::to_string(sc.number), sc.map, std::move(sc.spec)});
  }
  return suite;
}

namespace {

// Keeps ids and map names usable as unquoted CSV fields.
std::string csv_safe(std::string s) {
  for (char& c : s) {
    if (c == ',' || c == '"' || c == '\n' || c == '\r') c = '_';
  }
  return s;
}

}  // namespace

std::vector<SuiteEntry> load_suite(const std::filesystem::path& path) {
  std::vector<std::filesystem::path> files;
  if (std::filesystem::is_directory(path)) {
    for (const auto& e : std::filesystem::directory_iterator(path)) {
      if (e.path().extension() == ".json") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
  } else {
    files.push_back(path);
  }
  if (files.empty()) throw Error("io", path.string() + ": no scenario files");
  std::vector<SuiteEntry> suite;
  for (const auto& f : files) {
    EpisodeSpec spec = load_scenario(f);
    std::string map;
    switch (spec.map.kind) {
      case MapSource::Kind::builtin:
        map = spec.map.name;
        break;
      case MapSource::Kind::file:
        map = std::filesystem::path(spec.map.path).stem().string();
        break;
      case MapSource::Kind::procedural:
        map = "procedural";
        break;
    }
    std::string id = spec.name.empty() ? f.stem().string() : spec.name;
    suite.push_back({csv_safe(std::move(id)), csv_safe(std::move(map)), std::move(spec)});
  }
  return suite;
}

double EvalReport::mean_success_rate() const { return mean_of(*this, &EvalRow::success_rate); }
double EvalReport::mean_collision_rate() const { return mean_of(*this, &EvalRow::collision_rate); }
double EvalReport::mean_timeout_rate() const { return mean_of(*this, &EvalRow::timeout_rate); }

std::uint64_t eval_episode_seed(std::uint64_t seed, std::size_t entry, int episode) {
  return derive_seed(derive_seed(seed, entry), static_cast<std::uint64_t>(episode));
}

EvalReport run_eval(const std::vector<SuiteEntry>& suite, const PolicyFactory& make_policy,
                    int episodes, std::uint64_t seed, int threads) {
  if (episodes <= 0) throw Error("invalid-argument", "episodes must be > 0");
  const std::size_t total = suite.size() * static_cast<std::size_t>(episodes);
  std::vector<EpisodeSummary> results(total);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;

  auto worker = [&] {
    try {
      std::unique_ptr<Policy> policy = make_policy();
      for (std::size_t job = next++; job < total; job = next++) {
        const std::size_t entry = job / static_cast<std::size_t>(episodes);
        const int ep = static_cast<int>(job % static_cast<std::size_t>(episodes));
        EpisodeSpec spec = suite[entry].spec;
        spec.seed = eval_episode_seed(seed, entry, ep);
        results[job] = run_episode(spec, *policy);
      }
    } catch (...) {
      std::lock_guard lock(failure_mu);
      if (!failure) failure = std::current_exception();
      next = total;
    }
  };

  const int n_threads = std::max(1, std::min<int>(threads, static_cast<int>(total)));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  EvalReport report;
  for (std::size_t entry = 0; entry < suite.size(); ++entry) {
    EvalRow row{suite[entry].scenario_id, suite[entry].map};
    for (int ep = 0; ep < episodes; ++ep) {
      const EpisodeSummary& s = results[entry * static_cast<std::size_t>(episodes) + static_cast<std::size_t>(ep)];
      ++row.episodes;
      if (s.policy_error) {
        ++row.policy_errors;
      } else if (s.outcome == Outcome::success) {
        ++row.successes;
      } else if (s.outcome == Outcome::collision) {
        ++row.collisions;
      } else if (s.outcome == Outcome::timeout) {
        ++row.timeouts;
      }
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::string report_csv(const EvalReport& report) {
  std::ostringstream out;
  out << "scenario_id,map,episodes,successes,collisions,timeouts,policy_errors,"
         "success_rate,collision_rate,timeout_rate\n";
  for (const EvalRow& r : report.rows) {
    out << r.scenario_id << ',' << r.map << ',' << r.episodes << ',' << r.successes << ','
        << r.collisions << ',' << r.timeouts << ',' << r.policy_errors << ','
        << fmt_rate(r.success_rate()) << ',' << fmt_rate(r.collision_rate()) << ','
        << fmt_rate(r.timeout_rate()) << '\n';
  }
  return out.str();
}

EvalReport parse_report_csv(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line) || line.rfind("scenario_id,map,", 0) != 0) {
    throw Error("format", "report CSV: missing header");
  }
  auto to_int = [](const std::string& s) {
    int v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size()) throw Error("format", "report CSV: bad integer '" + s + "'");
    return v;
  };
  auto to_double = [](const std::string& s) {
    double v = 0.0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size()) throw Error("format", "report CSV: bad number '" + s + "'");
    return v;
  };
  EvalReport report;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 10) throw Error("format", "report CSV: expected 10 fields: " + line);
    EvalRow r{f[0], f[1], to_int(f[2]), to_int(f[3]), to_int(f[4]), to_int(f[5]), to_int(f[6])};
    if (to_double(f[7]) != r.success_rate() || to_double(f[8]) != r.collision_rate() ||
        to_double(f[9]) != r.timeout_rate()) {
      throw Error("format", "report CSV: rates disagree with counts: " + line);
    }
    report.rows.push_back(std::move(r));
  }
  return report;
}

std::string report_table(const EvalReport& report) {
  std::ostringstream out;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-14s %-10s %8s %9s %9s %9s\n", "scenario", "map", "episodes",
                "success", "collision", "timeout");
  out << buf;
  for (const EvalRow& r : report.rows) {
    std::snprintf(buf, sizeof buf, "%-14s %-10s %8d %8.1f%% %8.1f%% %8.1f%%\n", r.scenario_id.c_str(),
                  r.map.c_str(), r.episodes, 100.0 * r.success_rate(), 100.0 * r.collision_rate(),
                  100.0 * r.timeout_rate());
    out << buf;
  }
  std::snprintf(buf, sizeof buf, "%-14s %-10s %8s %8.1f%% %8.1f%% %8.1f%%\n", "mean", "", "",
                100.0 * report.mean_success_rate(), 100.0 * report.mean_collision_rate(),
                100.0 * report.mean_timeout_rate());
  out << buf;
  return out.str();
}

}  // namespace navsim
