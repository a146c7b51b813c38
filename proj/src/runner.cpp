#include "navsim/runner.hpp"

#include <json.hpp>

#include "navsim/error.hpp"

namespace navsim {

std::array<float, 3> quantize(const Action& a) {
  return {static_cast<float>(a.vx), static_cast<float>(a.vy), static_cast<float>(a.omega)};
}

Action dequantize(const std::array<float, 3>& a) { return Action(a[0], a[1], a[2]); }

std::string transcript_reset_line(const Observation& obs) {
  nlohmann::json j;
  j["step"] = obs.scan.timestamp_step;
  j["s_l"] = obs.s_l;
  j["s_r"] = obs.s_r;
  return j.dump();
}

std::string transcript_step_line(const std::array<float, 3>& action, const StepResult& result) {
  nlohmann::json j;
  j["step"] = result.info.step;
  j["a"] = action;
  j["s_l"] = result.observation.s_l;
  j["s_r"] = result.observation.s_r;
  j["reward"] = {{"r_s", result.reward.r_s},
                 {"r_c", result.reward.r_c},
                 {"r_d", result.reward.r_d},
                 {"r_p", result.reward.r_p},
                 {"total", result.reward.total}};
  j["done"] = result.done;
  j["outcome"] = to_string(result.outcome);
  return j.dump();
}

EpisodeSummary run_episode(const EpisodeSpec& spec, Policy& policy, const EpisodeHooks& hooks) {
  EpisodeSummary summary;
  summary.seed = spec.seed;
  summary.spec_hash = spec_hash(spec);
  if (hooks.record) {
    hooks.record->spec_hash = summary.spec_hash;
    hooks.record->steps.clear();
  }

  Environment env(spec);
  policy.begin_episode(env);
  Observation obs = env.observation();
  if (hooks.transcript) *hooks.transcript << transcript_reset_line(obs) << '\n';

  while (!env.done() && (hooks.step_budget < 0 || summary.steps < hooks.step_budget)) {
    std::array<float, 3> a;
    try {
      a = quantize(policy.act(env, obs));
    } catch (const Error& e) {
      summary.policy_error = e.what();
      break;
    }
    StepResult res = env.step(dequantize(a));
    ++summary.steps;
    summary.total_reward += res.reward.total;
    if (hooks.record) {
      hooks.record->steps.push_back(make_step_record(obs, a, res.reward.total, res.done));
    }
    if (hooks.transcript) *hooks.transcript << transcript_step_line(a, res) << '\n';
    obs = std::move(res.observation);
  }
  summary.outcome = env.outcome();
  return summary;
}

}  // namespace navsim
