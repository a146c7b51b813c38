#include "navsim/policy.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstring>

#include <json.hpp>

#include "navsim/error.hpp"
#include "navsim/orca.hpp"

namespace navsim {

namespace {

[[noreturn]] void policy_error(const std::string& msg) { throw Error("policy", msg); }

}  // namespace

Action track_world_velocity(const RobotState& robot, const Vec2& velocity,
                            const KinematicsConfig& cfg) {
  if (cfg.mode == DriveMode::holonomic) return action_for_world_velocity(robot, velocity, cfg);
  const double speed = norm(velocity);
  if (speed < 1e-12) return {};
  const double err = normalize_angle(std::atan2(velocity.y, velocity.x) - robot.pose.theta);
  const double omega = err / cfg.dt / cfg.omega_max;
  return Action(speed * std::max(0.0, std::cos(err)) / cfg.v_max, 0.0, omega);
}

Action StraightPolicy::act(const Environment& env, const Observation&) {
  const KinematicsConfig& kin = env.spec().kinematics;
  const Vec2 v = preferred_velocity(env.robot().pose.position(), env.goal(), kin.v_max, kin.dt);
  return track_world_velocity(env.robot(), v, kin);
}

Action OrcaPolicy::act(const Environment& env, const Observation&) {
  const KinematicsConfig& kin = env.spec().kinematics;
  const OrcaBody self = env.robot_body();
  std::vector<OrcaBody> others;
  others.reserve(env.agents().size());
  for (const HumanAgent& a : env.agents()) {
    others.push_back(OrcaBody{a.position, a.velocity, a.body_radius, a.pref_speed});
  }
  const Vec2 v = steer_to_goal(self, others, env.map().segments(), env.spec().orca, env.goal(),
                               kin.v_max, kin.dt);
  return track_world_velocity(env.robot(), v, kin);
}

std::string policy_request(const Observation& obs, std::int64_t step) {
  nlohmann::json j;
  j["s_l"] = obs.s_l;
  j["s_r"] = obs.s_r;
  j["step"] = step;
  return j.dump();
}

Action parse_policy_reply(std::string_view line) {
  const nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
  if (j.is_discarded()) policy_error("reply is not valid JSON: " + std::string(line.substr(0, 80)));
  if (!j.is_object() || !j.contains("a")) policy_error("reply has no \"a\" field");
  const nlohmann::json& a = j["a"];
  if (!a.is_array() || a.size() != 3) policy_error("\"a\" must be an array of 3 numbers");
  for (const auto& x : a) {
    if (!x.is_number()) policy_error("\"a\" must be an array of 3 numbers");
  }
  return Action(a[0].get<double>(), a[1].get<double>(), a[2].get<double>());
}

SubprocessPolicy::SubprocessPolicy(std::string command, std::chrono::milliseconds timeout)
    : command_(std::move(command)), timeout_(timeout) {}

SubprocessPolicy::~SubprocessPolicy() { stop(); }

void SubprocessPolicy::start() {
  // A dead child must surface as EPIPE, not kill the harness.
  ::signal(SIGPIPE, SIG_IGN);
  int in[2];
  int out[2];
  if (::pipe2(in, O_CLOEXEC) != 0) policy_error(std::string("pipe: ") + std::strerror(errno));
  if (::pipe2(out, O_CLOEXEC) != 0) {
    ::close(in[0]);
    ::close(in[1]);
    policy_error(std::string("pipe: ") + std::strerror(errno));
  }
  const pid_t pid = ::fork();
  if (pid < 0) {
    for (int fd : {in[0], in[1], out[0], out[1]}) ::close(fd);
    policy_error(std::string("fork: ") + std::strerror(errno));
  }
  if (pid == 0) {
    ::setpgid(0, 0);
    ::dup2(in[0], STDIN_FILENO);
    ::dup2(out[1], STDOUT_FILENO);
    ::execl("/bin/sh", "sh", "-c", command_.c_str(), static_cast<char*>(nullptr));
    ::_exit(127);
  }
  ::setpgid(pid, pid);
  ::close(in[0]);
  ::close(out[1]);
  pid_ = pid;
  to_child_ = in[1];
  from_child_ = out[0];
  buffer_.clear();
}

void SubprocessPolicy::stop() {
  if (to_child_ >= 0) ::close(to_child_);
  if (from_child_ >= 0) ::close(from_child_);
  to_child_ = from_child_ = -1;
  if (pid_ > 0) {
    ::kill(-pid_, SIGTERM);  // the shell and anything it spawned
    ::waitpid(pid_, nullptr, 0);
  }
  pid_ = -1;
  buffer_.clear();
}

std::string SubprocessPolicy::read_line() {
  const auto deadline = std::chrono::steady_clock::now() + timeout_;
  for (;;) {
    const auto nl = buffer_.find('\n');
    if (nl != std::string::npos) {
      std::string line = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      return line;
    }
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - std::chrono::steady_clock::now());
    if (left.count() <= 0) policy_error("no reply within " + std::to_string(timeout_.count()) + " ms");
    pollfd pfd{from_child_, POLLIN, 0};
    const int ready = ::poll(&pfd, 1, static_cast<int>(left.count()));
    if (ready < 0 && errno == EINTR) continue;
    if (ready < 0) policy_error(std::string("poll: ") + std::strerror(errno));
    if (ready == 0) continue;
    char chunk[65536];
    const ssize_t n = ::read(from_child_, chunk, sizeof chunk);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) policy_error("policy process closed its output");
    buffer_.append(chunk, static_cast<std::size_t>(n));
  }
}

Action SubprocessPolicy::act(const Environment&, const Observation& obs) {
  if (pid_ < 0) start();
  try {
    const std::string req = policy_request(obs, obs.scan.timestamp_step) + "\n";
    std::size_t off = 0;
    while (off < req.size()) {
      const ssize_t n = ::write(to_child_, req.data() + off, req.size() - off);
      if (n < 0 && errno == EINTR) continue;
      if (n < 0) policy_error(std::string("write to policy process: ") + std::strerror(errno));
      off += static_cast<std::size_t>(n);
    }
    return parse_policy_reply(read_line());
  } catch (const Error&) {
    // The stream may be out of sync; the next request starts a fresh process.
    stop();
    throw;
  }
}

std::unique_ptr<Policy> make_policy(std::string_view name) {
  if (name == "orca") return std::make_unique<OrcaPolicy>();
  if (name == "straight") return std::make_unique<StraightPolicy>();
  if (name == "stop") return std::make_unique<StopPolicy>();
  if (name.starts_with("cmd:") && name.size() > 4) {
    return std::make_unique<SubprocessPolicy>(std::string(name.substr(4)));
  }
  throw Error("usage", "unknown policy '" + std::string(name) +
                           "' (expected orca, straight, stop or cmd:<command>)");
}

}  // namespace navsim
