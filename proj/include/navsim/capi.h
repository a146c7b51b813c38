/* Plain C interface to one environment instance, for foreign-language
 * bindings. Handles are independent; a handle must not be used from two
 * threads at once. Functions returning int give 0 on success,
 * NAVSIM_ERROR on failure (see navsim_last_error) and NAVSIM_DONE when
 * stepping a finished episode. */
#ifndef NAVSIM_CAPI_H
#define NAVSIM_CAPI_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define NAVSIM_OK 0
#define NAVSIM_ERROR (-1)
#define NAVSIM_DONE (-2)

#define NAVSIM_SR_DIM 5

typedef struct navsim_env navsim_env;

typedef struct navsim_step_info {
  double reward;
  double r_s, r_c, r_d, r_p;
  int terminated; /* success or collision */
  int truncated;  /* timeout */
  int outcome;    /* 0 running, 1 success, 2 collision, 3 timeout */
  int64_t step;
  double min_clearance;
  double distance_to_goal;
} navsim_step_info;

/* `spec` is scenario JSON (starting with '{') or a preset name. Returns NULL
 * on failure and writes a message to err when err_len > 0. */
navsim_env* navsim_make(const char* spec, char* err, size_t err_len);
void navsim_close(navsim_env* env);

/* Starts a new episode; with has_seed != 0 the spec seed is replaced. */
int navsim_reset(navsim_env* env, int has_seed, uint64_t seed);

/* Length of s_l: 1080 for the 1D representation, 4096 for rings. */
size_t navsim_sl_dim(const navsim_env* env);

/* Copies the current observation. s_l must hold navsim_sl_dim() values,
 * s_r NAVSIM_SR_DIM. */
int navsim_observation(const navsim_env* env, float* s_l, double* s_r);

/* Applies one action (components clamped to [-1, 1]). */
int navsim_step(navsim_env* env, const float action[3], navsim_step_info* info);

/* Grayscale frame of the current scan and rings grid. With pixels == NULL
 * only width and height are reported. */
int navsim_render(const navsim_env* env, uint8_t* pixels, size_t len, int* width, int* height);

/* Message of the last failed call on this handle, "" if none. */
const char* navsim_last_error(const navsim_env* env);

#ifdef __cplusplus
}
#endif

#endif
