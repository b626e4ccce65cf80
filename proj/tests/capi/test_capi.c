// Copyright 2026 The fovwrs Authors
// SPDX-License-Identifier: Apache-2.0

// Exercises the shared library from plain C.

#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "fovwrs/fovwrs.h"

static int failures = 0;

#define CHECK(cond)                                                  \
  do {                                                               \
    if (!(cond)) {                                                   \
      fprintf(stderr, "%s:%d: CHECK(%s) failed; last error: %s\n",   \
              __FILE__, __LINE__, #cond, fovwrs_last_error());       \
      ++failures;                                                    \
    }                                                                \
  } while (0)

enum { W = 48, H = 32 };

static const char* kPipelineConfig =
    "{\"display\": {\"width\": 48, \"height\": 32, \"pixels_per_degree\": 16}, \"seed\": 4}";

static void fill(float* rgb, unsigned seed) {
  for (int i = 0; i < W * H * 3; ++i) {
    seed = seed * 1103515245u + 12345u;
    rgb[i] = (float)((seed >> 8) & 0xff) / 255.0f;
  }
}

static void test_version_and_errors(void) {
  CHECK(strlen(fovwrs_version()) > 0);
  char* out = NULL;
  CHECK(fovwrs_config_resolve("{\"bogus\": 1}", &out) == FOVWRS_E_CONFIG);
  CHECK(out == NULL);
  CHECK(strstr(fovwrs_last_error(), "bogus") != NULL);
  CHECK(fovwrs_config_resolve(NULL, &out) == FOVWRS_E_INVALID_ARGUMENT);
  CHECK(fovwrs_config_load("/nonexistent/config.json", &out) == FOVWRS_E_CONFIG);
  CHECK(fovwrs_config_resolve("{}", &out) == FOVWRS_OK);
  CHECK(out && strstr(out, "\"display\"") != NULL);
  fovwrs_string_free(out);
}

static void test_metrics(void) {
  static float a[W * H * 3], b[W * H * 3];
  fill(a, 1);
  memcpy(b, a, sizeof a);
  double v = 0;
  CHECK(fovwrs_psnr(a, b, W, H, &v) == FOVWRS_OK && isinf(v));
  CHECK(fovwrs_ssim(a, b, W, H, &v) == FOVWRS_OK && fabs(v - 1.0) < 1e-12);
  b[0] += 0.5f;
  CHECK(fovwrs_psnr(a, b, W, H, &v) == FOVWRS_OK && isfinite(v) && v > 30.0);
  CHECK(fovwrs_psnr(a, b, 0, H, &v) == FOVWRS_E_INVALID_ARGUMENT);
}

static void test_pipeline(void) {
  static float frame[W * H * 3], out1[W * H * 3], out2[W * H * 3];
  fovwrs_pipeline* p = NULL;
  CHECK(fovwrs_pipeline_create(kPipelineConfig, &p) == FOVWRS_OK);
  fill(frame, 7);
  for (int t = 0; t < 5; ++t) {
    CHECK(fovwrs_pipeline_step(p, frame, NULL, NULL, W, H, 10.0 + t, 12.0, out1) == FOVWRS_OK);
  }
  // The gaze pixel itself is always full quality.
  const int g = 3 * (12 * W + 14);
  CHECK(out1[g] == frame[g] && out1[g + 1] == frame[g + 1] && out1[g + 2] == frame[g + 2]);
  CHECK(fovwrs_pipeline_reset(p) == FOVWRS_OK);
  for (int t = 0; t < 5; ++t) {
    CHECK(fovwrs_pipeline_step(p, frame, NULL, NULL, W, H, 10.0 + t, 12.0, out2) == FOVWRS_OK);
  }
  CHECK(memcmp(out1, out2, sizeof out1) == 0);
  CHECK(fovwrs_pipeline_step(p, frame, NULL, NULL, W + 1, H, 1, 1, out2) == FOVWRS_E_INVALID_ARGUMENT);
  CHECK(fovwrs_pipeline_step(NULL, frame, NULL, NULL, W, H, 1, 1, out2) == FOVWRS_E_INVALID_ARGUMENT);
  fovwrs_pipeline_destroy(p);
  fovwrs_pipeline_destroy(NULL);
}

static void test_batch(void) {
  char* m1 = NULL;
  char* m2 = NULL;
  const char* cfg =
      "{\"scene\": {\"id\": \"checker\", \"scale\": 8}, \"frames\": 4, \"write_frames\": false,"
      " \"out\": \"capi_out\", \"display\": {\"width\": 64, \"height\": 48, \"pixels_per_degree\": 16}}";
  CHECK(fovwrs_simulate(cfg, &m1) == FOVWRS_OK);
  CHECK(fovwrs_simulate(cfg, &m2) == FOVWRS_OK);
  CHECK(m1 && m2 && strcmp(m1, m2) == 0);
  CHECK(m1 && strstr(m1, "frame_hashes") != NULL);
  fovwrs_string_free(m1);
  fovwrs_string_free(m2);

  char* report = NULL;
  const char* bench_cfg =
      "{\"display\": {\"width\": 64, \"height\": 48, \"pixels_per_degree\": 16},"
      " \"bench\": {\"warmup\": 1, \"frames\": 2}}";
  CHECK(fovwrs_bench(bench_cfg, &report) == FOVWRS_OK);
  CHECK(report && strstr(report, "fovwrs.bench.v1") != NULL);
  fovwrs_string_free(report);

  CHECK(fovwrs_scanpath_synth("{}", "capi_scanpath.csv") == FOVWRS_OK);
  FILE* f = fopen("capi_scanpath.csv", "r");
  CHECK(f != NULL);
  if (f) {
    char line[64] = {0};
    CHECK(fgets(line, sizeof line, f) && strncmp(line, "frame_index,gx_px,gy_px", 23) == 0);
    fclose(f);
  }
  remove("capi_scanpath.csv");
}

static void test_server(void) {
  fovwrs_server* s = NULL;
  const char* cfg = "{\"display\": {\"width\": 32, \"height\": 32, \"pixels_per_degree\": 16}}";
  CHECK(fovwrs_server_create(cfg, "127.0.0.1", 0, &s) == FOVWRS_OK);
  if (!s) return;
  const uint16_t port = fovwrs_server_port(s);
  CHECK(port != 0);
  fovwrs_server* busy = NULL;
  CHECK(fovwrs_server_create(cfg, "127.0.0.1", port, &busy) == FOVWRS_E_NETWORK);
  CHECK(busy == NULL);
  CHECK(fovwrs_server_start(s) == FOVWRS_OK);
  CHECK(fovwrs_server_stop(s) == FOVWRS_OK);
  fovwrs_server_destroy(s);
}

int main(void) {
  test_version_and_errors();
  test_metrics();
  test_pipeline();
  test_batch();
  test_server();
  if (failures) {
    fprintf(stderr, "%d check(s) failed\n", failures);
    return 1;
  }
  printf("capi: all checks passed\n");
  return 0;
}
