#include "navsim/dataset.hpp"

#include <unistd.h>

#include <bit>
#include <cerrno>
#include <cstdio>
#include <cstring>
#include <fstream>

#include "navsim/error.hpp"
#include "navsim/rng.hpp"
#include "navsim/runner.hpp"

namespace navsim {

namespace {

constexpr char kMagic[4] = {'N', 'R', 'D', '1'};

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}
void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}
void put_f32(std::string& out, float v) { put_u32(out, std::bit_cast<std::uint32_t>(v)); }

std::uint32_t get_u32(const unsigned char* p) {
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}
std::uint64_t get_u64(const unsigned char* p) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}
float get_f32(const unsigned char* p) { return std::bit_cast<float>(get_u32(p)); }

std::string encode_header(std::uint64_t n_episodes, float dt) {
  std::string h(kMagic, 4);
  put_u32(h, kNrdVersion);
  put_u64(h, n_episodes);
  put_u32(h, kScanDim);
  put_u32(h, kSrDim);
  put_u32(h, kActionDim);
  put_f32(h, dt);
  return h;
}

void encode_step(std::string& out, const StepRecord& s) {
  for (float v : s.s_l) put_f32(out, v);
  for (float v : s.s_r) put_f32(out, v);
  for (float v : s.a) put_f32(out, v);
  put_f32(out, s.r);
  out.push_back(s.done ? 1 : 0);
  out.append(kStepReservedBytes, '\0');
}

StepRecord decode_step(const unsigned char* p) {
  StepRecord s;
  for (float& v : s.s_l) v = get_f32(p), p += 4;
  for (float& v : s.s_r) v = get_f32(p), p += 4;
  for (float& v : s.a) v = get_f32(p), p += 4;
  s.r = get_f32(p);
  s.done = p[4] != 0;
  return s;
}

class Writer {
 public:
  explicit Writer(const std::filesystem::path& path) : path_(path) {
    f_ = std::fopen(path.c_str(), "wb");
    if (!f_) fail("cannot open for writing");
  }
  ~Writer() {
    if (f_) std::fclose(f_);
  }
  void write(const std::string& bytes) {
    if (std::fwrite(bytes.data(), 1, bytes.size(), f_) != bytes.size()) fail("write failed");
    offset_ += bytes.size();
  }
  void finish() {
    if (std::fflush(f_) != 0 || ::fsync(::fileno(f_)) != 0) fail("flush failed");
    const int rc = std::fclose(f_);
    f_ = nullptr;
    if (rc != 0) fail("close failed");
  }

 private:
  [[noreturn]] void fail(const std::string& what) {
    throw Error("io", path_.string() + ": " + what + " at offset " + std::to_string(offset_) + " (" +
                          std::strerror(errno) + ")");
  }
  std::filesystem::path path_;
  std::FILE* f_ = nullptr;
  std::uint64_t offset_ = 0;
};

}  // namespace

std::uint64_t nrd_file_size(const std::vector<std::uint64_t>& steps_per_episode) {
  std::uint64_t size = kNrdHeaderBytes;
  for (std::uint64_t n : steps_per_episode) size += kEpisodeHeaderBytes + n * kStepRecordBytes;
  return size;
}

void write_dataset(const std::filesystem::path& path, const Dataset& data) {
  for (std::size_t e = 0; e < data.episodes.size(); ++e) {
    const auto& steps = data.episodes[e].steps;
    for (std::size_t k = 0; k + 1 < steps.size(); ++k) {
      if (steps[k].done) {
        throw Error("invalid-record", "episode " + std::to_string(e) + ": done flag at step " +
                                          std::to_string(k) + " before the last step");
      }
    }
  }
  Writer w(path);
  w.write(encode_header(data.episodes.size(), data.dt));
  std::string buf;
  for (const EpisodeRecord& ep : data.episodes) {
    buf.clear();
    put_u64(buf, ep.steps.size());
    put_u64(buf, ep.spec_hash);
    for (const StepRecord& s : ep.steps) {
      encode_step(buf, s);
      if (buf.size() >= (1u << 22)) {
        w.write(buf);
        buf.clear();
      }
    }
    w.write(buf);
  }
  w.finish();
}

ReadResult read_dataset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("io", path.string() + ": cannot open for reading");

  ReadResult result;
  std::uint64_t offset = 0;
  auto truncated = [&](std::uint64_t at) {
    result.truncated_at = at;
    result.truncation = "truncated at offset " + std::to_string(at);
  };
  auto read_exact = [&](unsigned char* dst, std::size_t n) {
    in.read(reinterpret_cast<char*>(dst), static_cast<std::streamsize>(n));
    return static_cast<std::size_t>(in.gcount()) == n;
  };

  unsigned char header[kNrdHeaderBytes];
  if (!read_exact(header, sizeof header)) {
    if (in.gcount() >= 4 && std::memcmp(header, kMagic, 4) != 0) {
      throw Error("format", path.string() + ": not an NRD1 file");
    }
    truncated(0);
    return result;
  }
  if (std::memcmp(header, kMagic, 4) != 0) throw Error("format", path.string() + ": not an NRD1 file");
  const std::uint32_t version = get_u32(header + 4);
  if (version != kNrdVersion) {
    throw Error("format", path.string() + ": unsupported version " + std::to_string(version));
  }
  const std::uint64_t n_episodes = get_u64(header + 8);
  if (get_u32(header + 16) != kScanDim || get_u32(header + 20) != kSrDim ||
      get_u32(header + 24) != kActionDim) {
    throw Error("format", path.string() + ": unexpected record dimensions");
  }
  result.data.dt = get_f32(header + 28);
  offset = kNrdHeaderBytes;

  std::vector<unsigned char> rec(kStepRecordBytes);
  for (std::uint64_t e = 0; e < n_episodes; ++e) {
    unsigned char eh[kEpisodeHeaderBytes];
    if (!read_exact(eh, sizeof eh)) {
      truncated(offset);
      return result;
    }
    offset += kEpisodeHeaderBytes;
    EpisodeRecord ep;
    const std::uint64_t n_steps = get_u64(eh);
    ep.spec_hash = get_u64(eh + 8);
    for (std::uint64_t k = 0; k < n_steps; ++k) {
      if (!read_exact(rec.data(), rec.size())) {
        result.data.episodes.push_back(std::move(ep));
        truncated(offset);
        return result;
      }
      offset += kStepRecordBytes;
      ep.steps.push_back(decode_step(rec.data()));
    }
    result.data.episodes.push_back(std::move(ep));
  }
  char extra;
  if (in.read(&extra, 1); in.gcount() != 0) {
    throw Error("format", path.string() + ": trailing bytes after offset " + std::to_string(offset));
  }
  return result;
}

void concat_datasets(const std::vector<std::filesystem::path>& inputs,
                     const std::filesystem::path& output) {
  Dataset all;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    ReadResult part = read_dataset(inputs[i]);
    if (part.truncation) throw Error("format", inputs[i].string() + ": " + *part.truncation);
    if (i == 0) {
      all.dt = part.data.dt;
    } else if (part.data.dt != all.dt) {
      throw Error("format", inputs[i].string() + ": dt differs from " + inputs[0].string());
    }
    for (auto& ep : part.data.episodes) all.episodes.push_back(std::move(ep));
  }
  write_dataset(output, all);
}

StepRecord make_step_record(const Observation& obs, const std::array<float, 3>& action,
                            double reward, bool done) {
  if (obs.scan.ranges.size() != kScanDim) {
    throw Error("invalid-record", "scan has " + std::to_string(obs.scan.ranges.size()) +
                                      " beams, records hold " + std::to_string(kScanDim));
  }
  StepRecord s;
  for (std::size_t i = 0; i < kScanDim; ++i) s.s_l[i] = static_cast<float>(obs.scan.ranges[i]);
  for (std::size_t i = 0; i < kSrDim; ++i) s.s_r[i] = static_cast<float>(obs.s_r[i]);
  s.a = action;
  s.r = static_cast<float>(reward);
  s.done = done;
  return s;
}

EpisodeSpec dataset_episode_spec(const DatasetConfig& cfg, std::uint64_t index) {
  Rng rng(derive_seed(cfg.seed, 2 * index));
  EpisodeSpec spec;
  spec.name = "dataset-" + std::to_string(index);
  spec.seed = derive_seed(cfg.seed, 2 * index + 1);
  spec.map.kind = MapSource::Kind::procedural;
  spec.map.n_polygons = static_cast<int>(rng.uniform_int(0, cfg.max_polygons));
  spec.n_agents = static_cast<int>(rng.uniform_int(cfg.min_agents, cfg.max_agents));
  spec.agent_layout.kind = AgentLayout::Kind::random;
  spec.render_mode = RenderMode::legs;
  spec.max_steps = cfg.max_steps;
  return spec;
}

Dataset generate_training_dataset(const DatasetConfig& cfg) {
  if (cfg.total_steps == 0) throw Error("invalid-argument", "total_steps must be > 0");
  if (cfg.min_agents < 0 || cfg.max_agents < cfg.min_agents || cfg.max_polygons < 0) {
    throw Error("invalid-argument", "agent and polygon ranges must be non-empty and non-negative");
  }
  Dataset data;
  data.dt = static_cast<float>(EpisodeSpec{}.kinematics.dt);
  OrcaPolicy policy;
  std::uint64_t recorded = 0;
  for (std::uint64_t index = 0; recorded < cfg.total_steps; ++index) {
    const EpisodeSpec spec = dataset_episode_spec(cfg, index);
    EpisodeRecord ep;
    EpisodeHooks hooks;
    hooks.record = &ep;
    hooks.step_budget = static_cast<std::int64_t>(cfg.total_steps - recorded);
    run_episode(spec, policy, hooks);
    recorded += ep.steps.size();
    data.episodes.push_back(std::move(ep));
  }
  return data;
}

}  // namespace navsim
