// Copyright 2026 The fovwrs Authors
// SPDX-License-Identifier: Apache-2.0

#include "fovwrs/fovwrs.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>
#include <string>

#include "config.hpp"
#include "errors.hpp"
#include "live_server.hpp"
#include "metrics.hpp"
#include "runner.hpp"

struct fovwrs_pipeline {
  fovwrs::TemporalPipeline pipeline;
};

struct fovwrs_server {
  fovwrs::LiveServer server;
};

namespace {

thread_local std::string g_last_error;

fovwrs_status code_for(fovwrs::ErrorKind k) {
  using fovwrs::ErrorKind;
  switch (k) {
    case ErrorKind::kInvalidInput: return FOVWRS_E_INVALID_ARGUMENT;
    case ErrorKind::kUndefinedInput: return FOVWRS_E_UNDEFINED;
    case ErrorKind::kIo: return FOVWRS_E_IO;
    case ErrorKind::kParse: return FOVWRS_E_PARSE;
    case ErrorKind::kConfig: return FOVWRS_E_CONFIG;
    case ErrorKind::kNetwork: return FOVWRS_E_NETWORK;
    case ErrorKind::kRuntime: return FOVWRS_E_RUNTIME;
  }
  return FOVWRS_E_RUNTIME;
}

template <typename F>
fovwrs_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return FOVWRS_OK;
  } catch (const fovwrs::Error& e) {
    g_last_error = e.what();
    return code_for(e.kind());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return FOVWRS_E_RUNTIME;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return FOVWRS_E_RUNTIME;
  }
}

void require(bool ok, const char* what) {
  if (!ok) fovwrs::fail(fovwrs::ErrorKind::kInvalidInput, what);
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

fovwrs::Image image_from(const float* rgb, std::int32_t w, std::int32_t h) {
  fovwrs::Image img(w, h);
  for (std::size_t i = 0; i < img.size(); ++i) img[i] = {rgb[3 * i], rgb[3 * i + 1], rgb[3 * i + 2]};
  return img;
}

}  // namespace

extern "C" {

const char* fovwrs_version(void) { return FOVWRS_VERSION; }

const char* fovwrs_last_error(void) { return g_last_error.c_str(); }

void fovwrs_string_free(char* s) { std::free(s); }

fovwrs_status fovwrs_config_load(const char* path, char** resolved_json) {
  return guarded([&] {
    require(path && resolved_json, "null argument");
    *resolved_json = dup_string(fovwrs::load_run_config(path).to_json().dump(2));
  });
}

fovwrs_status fovwrs_config_resolve(const char* config_json, char** resolved_json) {
  return guarded([&] {
    require(config_json && resolved_json, "null argument");
    *resolved_json = dup_string(fovwrs::parse_run_config_text(config_json).to_json().dump(2));
  });
}

fovwrs_status fovwrs_pipeline_create(const char* config_json, fovwrs_pipeline** out) {
  return guarded([&] {
    require(config_json && out, "null argument");
    *out = nullptr;
    const fovwrs::RunConfig cfg = fovwrs::parse_run_config_text(config_json);
    cfg.pipeline.validate();
    *out = new fovwrs_pipeline{fovwrs::TemporalPipeline(cfg.pipeline)};
  });
}

fovwrs_status fovwrs_pipeline_step(fovwrs_pipeline* p, const float* rgb, const float* depth, const float* motion,
                                   int32_t width, int32_t height, double gaze_x, double gaze_y, float* out_rgb) {
  return guarded([&] {
    require(p && rgb && out_rgb, "null argument");
    require(width > 0 && height > 0, "width and height must be positive");
    fovwrs::FrameBundle b;
    b.color = image_from(rgb, width, height);
    b.depth = fovwrs::DepthPlane(width, height, 1.0f);
    b.motion = fovwrs::MotionField(width, height);
    for (std::size_t i = 0; i < b.color.size(); ++i) {
      if (depth) b.depth[i] = depth[i];
      if (motion) b.motion[i] = {motion[2 * i], motion[2 * i + 1]};
    }
    const fovwrs::StepResult r = p->pipeline.step(b, fovwrs::PixelPos{gaze_x, gaze_y});
    for (std::size_t i = 0; i < r.output.size(); ++i) {
      out_rgb[3 * i] = r.output[i].r;
      out_rgb[3 * i + 1] = r.output[i].g;
      out_rgb[3 * i + 2] = r.output[i].b;
    }
  });
}

fovwrs_status fovwrs_pipeline_reset(fovwrs_pipeline* p) {
  return guarded([&] {
    require(p, "null argument");
    p->pipeline.reset();
  });
}

void fovwrs_pipeline_destroy(fovwrs_pipeline* p) { delete p; }

fovwrs_status fovwrs_psnr(const float* a, const float* b, int32_t width, int32_t height, double* out) {
  return guarded([&] {
    require(a && b && out, "null argument");
    require(width > 0 && height > 0, "width and height must be positive");
    *out = fovwrs::psnr(image_from(a, width, height), image_from(b, width, height));
  });
}

fovwrs_status fovwrs_ssim(const float* a, const float* b, int32_t width, int32_t height, double* out) {
  return guarded([&] {
    require(a && b && out, "null argument");
    require(width > 0 && height > 0, "width and height must be positive");
    *out = fovwrs::ssim(image_from(a, width, height), image_from(b, width, height));
  });
}

fovwrs_status fovwrs_simulate(const char* config_json, char** manifest_json) {
  return guarded([&] {
    require(config_json, "null argument");
    const fovwrs::SimulateResult r = fovwrs::simulate(fovwrs::parse_run_config_text(config_json));
    if (manifest_json) *manifest_json = dup_string(r.manifest.dump(2));
  });
}

fovwrs_status fovwrs_bench(const char* config_json, char** report_json) {
  return guarded([&] {
    require(config_json && report_json, "null argument");
    *report_json = dup_string(fovwrs::bench(fovwrs::parse_run_config_text(config_json)).dump(2));
  });
}

fovwrs_status fovwrs_scanpath_synth(const char* config_json, const char* out_path) {
  return guarded([&] {
    require(config_json && out_path, "null argument");
    fovwrs::RunConfig cfg = fovwrs::parse_run_config_text(config_json);
    cfg.scanpath_path.reset();
    fovwrs::write_scanpath(out_path, fovwrs::resolve_scanpath(cfg));
  });
}

fovwrs_status fovwrs_server_create(const char* config_json, const char* host, uint16_t port, fovwrs_server** out) {
  return guarded([&] {
    require(config_json && out, "null argument");
    *out = nullptr;
    fovwrs::ServerOptions opts;
    if (host) opts.host = host;
    opts.port = port;
    *out = new fovwrs_server{fovwrs::LiveServer(fovwrs::parse_run_config_text(config_json), opts)};
  });
}

uint16_t fovwrs_server_port(const fovwrs_server* s) { return s ? s->server.port() : 0; }

fovwrs_status fovwrs_server_start(fovwrs_server* s) {
  return guarded([&] {
    require(s, "null argument");
    s->server.start();
  });
}

fovwrs_status fovwrs_server_stop(fovwrs_server* s) {
  return guarded([&] {
    require(s, "null argument");
    s->server.stop();
  });
}

fovwrs_status fovwrs_server_run(fovwrs_server* s) {
  return guarded([&] {
    require(s, "null argument");
    s->server.run_until_signal();
  });
}

void fovwrs_server_destroy(fovwrs_server* s) { delete s; }

}  // extern "C"
