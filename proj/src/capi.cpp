#include "navsim/capi.h"

#include <algorithm>
#include <cstring>
#include <memory>
#include <string>

#include "navsim/env.hpp"
#include "navsim/error.hpp"
#include "navsim/render.hpp"
#include "navsim/scenarios.hpp"

struct navsim_env {
  navsim::EpisodeSpec spec;
  std::unique_ptr<navsim::Environment> env;
  std::string error;
};

namespace {

template <class F>
int guarded(navsim_env* h, F&& f) {
  if (!h) return NAVSIM_ERROR;
  try {
    h->error.clear();
    return f();
  } catch (const navsim::ContractViolation& e) {
    h->error = e.what();
    return NAVSIM_DONE;
  } catch (const std::exception& e) {
    h->error = e.what();
    return NAVSIM_ERROR;
  }
}

int outcome_code(navsim::Outcome o) {
  switch (o) {
    case navsim::Outcome::running:
      return 0;
    case navsim::Outcome::success:
      return 1;
    case navsim::Outcome::collision:
      return 2;
    case navsim::Outcome::timeout:
      return 3;
  }
  return 0;
}

}  // namespace

extern "C" {

navsim_env* navsim_make(const char* spec, char* err, size_t err_len) {
  try {
    if (!spec) throw navsim::Error("usage", "spec is NULL");
    auto h = std::make_unique<navsim_env>();
    const std::string_view text(spec);
    h->spec = text.find_first_not_of(" \t\r\n") != std::string_view::npos &&
                      text[text.find_first_not_of(" \t\r\n")] == '{'
                  ? navsim::spec_from_json(std::string(text))
                  : navsim::preset_spec(text);
    h->env = std::make_unique<navsim::Environment>(h->spec);
    return h.release();
  } catch (const std::exception& e) {
    if (err && err_len > 0) {
      const std::size_t n = std::min(err_len - 1, std::strlen(e.what()));
      std::memcpy(err, e.what(), n);
      err[n] = '\0';
    }
    return nullptr;
  }
}

void navsim_close(navsim_env* env) { delete env; }

int navsim_reset(navsim_env* h, int has_seed, uint64_t seed) {
  return guarded(h, [&] {
    if (has_seed) h->spec.seed = seed;
    h->env->reset(h->spec);
    return NAVSIM_OK;
  });
}

size_t navsim_sl_dim(const navsim_env* h) { return h ? h->env->observation().s_l.size() : 0; }

int navsim_observation(const navsim_env* h, float* s_l, double* s_r) {
  return guarded(const_cast<navsim_env*>(h), [&] {
    const navsim::Observation& obs = h->env->observation();
    if (s_l) std::copy(obs.s_l.begin(), obs.s_l.end(), s_l);
    if (s_r) std::copy(obs.s_r.begin(), obs.s_r.end(), s_r);
    return NAVSIM_OK;
  });
}

int navsim_step(navsim_env* h, const float action[3], navsim_step_info* info) {
  return guarded(h, [&] {
    if (!action) throw navsim::Error("usage", "action is NULL");
    const navsim::StepResult r = h->env->step(navsim::Action(action[0], action[1], action[2]));
    if (info) {
      info->reward = r.reward.total;
      info->r_s = r.reward.r_s;
      info->r_c = r.reward.r_c;
      info->r_d = r.reward.r_d;
      info->r_p = r.reward.r_p;
      info->terminated = r.outcome == navsim::Outcome::success || r.outcome == navsim::Outcome::collision;
      info->truncated = r.outcome == navsim::Outcome::timeout;
      info->outcome = outcome_code(r.outcome);
      info->step = r.info.step;
      info->min_clearance = r.info.min_clearance;
      info->distance_to_goal = r.info.distance_to_goal;
    }
    return NAVSIM_OK;
  });
}

int navsim_render(const navsim_env* h, uint8_t* pixels, size_t len, int* width, int* height) {
  return guarded(const_cast<navsim_env*>(h), [&] {
    const navsim::Observation& obs = h->env->observation();
    std::vector<float> ranges(obs.scan.ranges.begin(), obs.scan.ranges.end());
    const navsim::GrayImage img = navsim::render_frame(ranges, h->spec.lidar, h->spec.rings);
    if (width) *width = img.width;
    if (height) *height = img.height;
    if (pixels) {
      if (len < img.pixels.size()) throw navsim::Error("usage", "pixel buffer too small");
      std::copy(img.pixels.begin(), img.pixels.end(), pixels);
    }
    return NAVSIM_OK;
  });
}

const char* navsim_last_error(const navsim_env* h) { return h ? h->error.c_str() : "null handle"; }

}  // extern "C"
