/* Copyright 2026 The fovwrs Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the fovwrs library. All functions return a status code;
 * on failure fovwrs_last_error() describes the problem (thread-local).
 * Images are row-major interleaved float RGB in [0,1], pixel centers at
 * integer coordinates. Strings returned through char** must be released
 * with fovwrs_string_free.
 */
#ifndef FOVWRS_FOVWRS_H_
#define FOVWRS_FOVWRS_H_

#include <stddef.h>
#include <stdint.h>

#if defined(FOVWRS_BUILDING_LIBRARY)
#define FOVWRS_API __attribute__((visibility("default")))
#else
#define FOVWRS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fovwrs_status {
  FOVWRS_OK = 0,
  FOVWRS_E_INVALID_ARGUMENT = 1,
  FOVWRS_E_UNDEFINED = 2, /* mathematically undefined input, e.g. 0/0 */
  FOVWRS_E_IO = 3,
  FOVWRS_E_PARSE = 4,
  FOVWRS_E_CONFIG = 5,
  FOVWRS_E_NETWORK = 6,
  FOVWRS_E_RUNTIME = 7
} fovwrs_status;

typedef struct fovwrs_pipeline fovwrs_pipeline;
typedef struct fovwrs_server fovwrs_server;

FOVWRS_API const char* fovwrs_version(void);
FOVWRS_API const char* fovwrs_last_error(void);
FOVWRS_API void fovwrs_string_free(char* s);

/* Loads a config file (or a run manifest) and returns it fully resolved as JSON. */
FOVWRS_API fovwrs_status fovwrs_config_load(const char* path, char** resolved_json);
/* Validates a config document and returns it fully resolved as JSON. */
FOVWRS_API fovwrs_status fovwrs_config_resolve(const char* config_json, char** resolved_json);

/* Temporal pipeline on caller-supplied frames. The config's display size fixes
 * the frame size. depth (w*h) and motion (w*h interleaved dx,dy) may be NULL,
 * meaning unit depth and zero motion. out_rgb receives w*h*3 floats. */
FOVWRS_API fovwrs_status fovwrs_pipeline_create(const char* config_json, fovwrs_pipeline** out);
FOVWRS_API fovwrs_status fovwrs_pipeline_step(fovwrs_pipeline* p, const float* rgb, const float* depth,
                                              const float* motion, int32_t width, int32_t height,
                                              double gaze_x, double gaze_y, float* out_rgb);
FOVWRS_API fovwrs_status fovwrs_pipeline_reset(fovwrs_pipeline* p);
FOVWRS_API void fovwrs_pipeline_destroy(fovwrs_pipeline* p);

FOVWRS_API fovwrs_status fovwrs_psnr(const float* a, const float* b, int32_t width, int32_t height, double* out);
FOVWRS_API fovwrs_status fovwrs_ssim(const float* a, const float* b, int32_t width, int32_t height, double* out);

/* Batch commands. simulate returns the run manifest, bench the timing report. */
FOVWRS_API fovwrs_status fovwrs_simulate(const char* config_json, char** manifest_json);
FOVWRS_API fovwrs_status fovwrs_bench(const char* config_json, char** report_json);
FOVWRS_API fovwrs_status fovwrs_scanpath_synth(const char* config_json, const char* out_path);

/* Live service. port 0 binds a free port; query it with fovwrs_server_port. */
FOVWRS_API fovwrs_status fovwrs_server_create(const char* config_json, const char* host, uint16_t port,
                                              fovwrs_server** out);
FOVWRS_API uint16_t fovwrs_server_port(const fovwrs_server* s);
FOVWRS_API fovwrs_status fovwrs_server_start(fovwrs_server* s);
FOVWRS_API fovwrs_status fovwrs_server_stop(fovwrs_server* s);
/* Starts if needed and blocks until SIGINT/SIGTERM or fovwrs_server_stop. */
FOVWRS_API fovwrs_status fovwrs_server_run(fovwrs_server* s);
FOVWRS_API void fovwrs_server_destroy(fovwrs_server* s);

#ifdef __cplusplus
}
#endif

#endif /* FOVWRS_FOVWRS_H_ */
