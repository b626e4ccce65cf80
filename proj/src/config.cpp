// Copyright 2026 The fovwrs Authors
// SPDX-License-Identifier: Apache-2.0

#include "config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "errors.hpp"

namespace fovwrs {

namespace {

using nlohmann::json;

constexpr double kDefaultPixelsPerDegree = 3840.0 / 80.0;

[[noreturn]] void config_fail(const std::string& field, const std::string& what) {
  fail(ErrorKind::kConfig, "config field '" + field + "': " + what);
}

void reject_unknown(const json& obj, const std::string& prefix, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) config_fail(prefix, "expected an object");
  const std::set<std::string> keys(allowed.begin(), allowed.end());
  for (const auto& [key, value] : obj.items()) {
    if (!keys.count(key)) config_fail(prefix.empty() ? key : prefix + "." + key, "unknown key");
  }
}

std::string join(const std::string& prefix, const char* key) { return prefix.empty() ? key : prefix + "." + key; }

double get_number(const json& obj, const std::string& prefix, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) config_fail(join(prefix, key), "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) config_fail(join(prefix, key), "must be finite");
  return d;
}

std::int64_t get_int(const json& obj, const std::string& prefix, const char* key, std::int64_t fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer()) config_fail(join(prefix, key), "expected an integer");
  return v.get<std::int64_t>();
}

bool get_bool(const json& obj, const std::string& prefix, const char* key, bool fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_boolean()) config_fail(join(prefix, key), "expected a boolean");
  return v.get<bool>();
}

std::string get_string(const json& obj, const std::string& prefix, const char* key, const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_string()) config_fail(join(prefix, key), "expected a string");
  return v.get<std::string>();
}

// Runs a component validator and re-labels its error with the config field.
template <typename F>
void validate_as(const std::string& field, F&& check) {
  try {
    check();
  } catch (const Error& e) {
    config_fail(field, e.what());
  }
}

std::string foveation_method_name(FoveationMethod m) {
  return m == FoveationMethod::kGaussian ? "gaussian" : "mip_bilinear";
}

}  // namespace

DisplayGeometry default_display() {
  DisplayGeometry g;
  g.width_px = 1280;
  g.height_px = 720;
  g.horizontal_fov_deg = g.width_px / kDefaultPixelsPerDegree;
  return g;
}

RunConfig parse_run_config(const json& doc) {
  reject_unknown(doc, "", {"scene", "input", "scanpath", "methods", "foveation", "weights", "display", "seed",
                           "out", "frames", "threads", "png16", "write_frames", "eps_rel", "history_distance",
                           "foveal_guard", "temporal_bias", "assets", "tick_hz", "bench"});
  RunConfig cfg;

  if (doc.contains("scene") && doc.contains("input")) config_fail("input", "give either scene or input, not both");
  if (doc.contains("input")) {
    cfg.input = get_string(doc, "", "input", "");
  } else {
    const json scene = doc.value("scene", json::object());
    reject_unknown(scene, "scene", {"id", "scale", "velocity", "seed", "occluders"});
    SceneSpec spec;
    spec.id = [&] {
      try {
        return scene_from_string(get_string(scene, "scene", "id", "checker"));
      } catch (const Error& e) {
        config_fail("scene.id", e.what());
      }
    }();
    spec.scale = get_number(scene, "scene", "scale", spec.scale);
    spec.velocity = get_number(scene, "scene", "velocity", spec.velocity);
    spec.seed = static_cast<std::uint64_t>(get_int(scene, "scene", "seed", static_cast<std::int64_t>(spec.seed)));
    if (scene.contains("occluders")) {
      const json& occ = scene.at("occluders");
      reject_unknown(occ, "scene.occluders", {"count", "width_px", "velocity", "depth", "background_depth"});
      auto& o = spec.occluders;
      o.count = static_cast<std::int32_t>(get_int(occ, "scene.occluders", "count", o.count));
      o.width_px = static_cast<std::int32_t>(get_int(occ, "scene.occluders", "width_px", o.width_px));
      o.velocity = get_number(occ, "scene.occluders", "velocity", o.velocity);
      o.depth = get_number(occ, "scene.occluders", "depth", o.depth);
      o.background_depth = get_number(occ, "scene.occluders", "background_depth", o.background_depth);
    }
    validate_as("scene", [&] { spec.validate(); });
    cfg.scene = spec;
  }

  if (doc.contains("scanpath")) {
    const json& sp = doc.at("scanpath");
    reject_unknown(sp, "scanpath", {"path", "synth"});
    if (sp.contains("path")) cfg.scanpath_path = get_string(sp, "scanpath", "path", "");
    if (sp.contains("synth")) {
      const json& s = sp.at("synth");
      reject_unknown(s, "scanpath.synth", {"fixations", "fixation_frames", "saccade_deg", "microsaccade_sigma_deg", "seed"});
      auto& p = cfg.scanpath_synth;
      p.fixations = static_cast<std::int32_t>(get_int(s, "scanpath.synth", "fixations", p.fixations));
      p.fixation_frames = static_cast<std::int32_t>(get_int(s, "scanpath.synth", "fixation_frames", p.fixation_frames));
      p.saccade_deg = get_number(s, "scanpath.synth", "saccade_deg", p.saccade_deg);
      p.microsaccade_sigma_deg = get_number(s, "scanpath.synth", "microsaccade_sigma_deg", p.microsaccade_sigma_deg);
      p.seed = static_cast<std::uint64_t>(get_int(s, "scanpath.synth", "seed", static_cast<std::int64_t>(p.seed)));
      validate_as("scanpath.synth", [&] { p.validate(); });
    }
  }

  if (doc.contains("methods")) {
    const json& m = doc.at("methods");
    if (!m.is_array() || m.empty()) config_fail("methods", "expected a non-empty array");
    cfg.methods.clear();
    for (const auto& item : m) {
      const std::string name = item.is_string() ? item.get<std::string>() : "";
      if (name == "fov") {
        cfg.methods.push_back(Method::kFov);
      } else if (name == "wrs") {
        cfg.methods.push_back(Method::kWrs);
      } else {
        config_fail("methods", "entries must be \"fov\" or \"wrs\"");
      }
    }
  }

  PipelineConfig& pc = cfg.pipeline;
  const json display = doc.value("display", json::object());
  reject_unknown(display, "display", {"width", "height", "horizontal_fov_deg", "pixels_per_degree", "mapping"});
  pc.display.width_px = static_cast<std::int32_t>(get_int(display, "display", "width", 1280));
  pc.display.height_px = static_cast<std::int32_t>(get_int(display, "display", "height", 720));
  if (display.contains("horizontal_fov_deg") && display.contains("pixels_per_degree")) {
    config_fail("display.pixels_per_degree", "give either horizontal_fov_deg or pixels_per_degree");
  }
  if (display.contains("horizontal_fov_deg")) {
    pc.display.horizontal_fov_deg = get_number(display, "display", "horizontal_fov_deg", 0.0);
  } else {
    const double ppd = get_number(display, "display", "pixels_per_degree", kDefaultPixelsPerDegree);
    if (!(ppd > 0.0)) config_fail("display.pixels_per_degree", "must be positive");
    pc.display.horizontal_fov_deg = pc.display.width_px / ppd;
  }
  const std::string mapping = get_string(display, "display", "mapping", "linear");
  if (mapping == "linear") {
    pc.display.mapping = AngularMapping::kLinear;
  } else if (mapping == "perspective") {
    pc.display.mapping = AngularMapping::kPerspective;
  } else {
    config_fail("display.mapping", "must be \"linear\" or \"perspective\"");
  }
  validate_as("display", [&] { pc.display.validate(); });

  const json fov = doc.value("foveation", json::object());
  reject_unknown(fov, "foveation", {"method", "fovea_deg", "mid_radius_deg", "mid_block", "far_block", "blend_deg", "sigma_max_px"});
  const std::string fmethod = get_string(fov, "foveation", "method", "mip_bilinear");
  if (fmethod == "mip_bilinear") {
    pc.foveation.method = FoveationMethod::kMipBilinear;
  } else if (fmethod == "gaussian") {
    pc.foveation.method = FoveationMethod::kGaussian;
  } else {
    config_fail("foveation.method", "must be \"mip_bilinear\" or \"gaussian\"");
  }
  const double fovea_deg = get_number(fov, "foveation", "fovea_deg", 5.0);
  if (!(fovea_deg > 0.0)) config_fail("foveation.fovea_deg", "must be positive");
  pc.foveation.r_f = fovea_deg / 2.0;
  pc.foveation.mid_radius = get_number(fov, "foveation", "mid_radius_deg", pc.foveation.mid_radius);
  pc.foveation.mid_block = static_cast<std::int32_t>(get_int(fov, "foveation", "mid_block", pc.foveation.mid_block));
  pc.foveation.far_block = static_cast<std::int32_t>(get_int(fov, "foveation", "far_block", pc.foveation.far_block));
  pc.foveation.blend_deg = get_number(fov, "foveation", "blend_deg", pc.foveation.blend_deg);
  pc.foveation.sigma_max = get_number(fov, "foveation", "sigma_max_px", pc.foveation.sigma_max);
  validate_as("foveation", [&] { pc.foveation.validate(); });

  const json weights = doc.value("weights", json::object());
  reject_unknown(weights, "weights", {"a_k", "r_2k", "r_ek", "dc0", "r_m"});
  pc.weights.a_k = get_number(weights, "weights", "a_k", pc.weights.a_k);
  pc.weights.r_2k = get_number(weights, "weights", "r_2k", pc.weights.r_2k);
  pc.weights.r_ek = get_number(weights, "weights", "r_ek", pc.weights.r_ek);
  pc.weights.dc0 = get_number(weights, "weights", "dc0", pc.weights.dc0);
  pc.weights.r_m = get_number(weights, "weights", "r_m", pc.weights.r_m);
  pc.weights.r_f = pc.foveation.r_f;
  validate_as("weights", [&] { pc.weights.validate(); });

  if (doc.contains("seed")) {
    const json& s = doc.at("seed");
    if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<std::int64_t>() >= 0)) {
      config_fail("seed", "expected an unsigned 64-bit integer");
    }
    pc.seed = s.get<std::uint64_t>();
  }
  pc.eps_rel = get_number(doc, "", "eps_rel", pc.eps_rel);
  if (pc.eps_rel < 0.0) config_fail("eps_rel", "must be non-negative");
  const std::string dist = get_string(doc, "", "history_distance", "lightness");
  if (dist == "lightness") {
    pc.distance = HistoryDistance::kLightness;
  } else if (dist == "delta_e94") {
    pc.distance = HistoryDistance::kDeltaE94;
  } else {
    config_fail("history_distance", "must be \"lightness\" or \"delta_e94\"");
  }
  pc.foveal_guard = get_bool(doc, "", "foveal_guard", pc.foveal_guard);
  pc.temporal_bias = get_bool(doc, "", "temporal_bias", pc.temporal_bias);
  pc.threads = static_cast<int>(get_int(doc, "", "threads", 1));
  if (pc.threads < 0) config_fail("threads", "must be >= 0 (0 = all cores)");

  cfg.out = get_string(doc, "", "out", cfg.out.string());
  if (doc.contains("frames")) {
    cfg.frames = get_int(doc, "", "frames", 0);
    if (*cfg.frames < 1) config_fail("frames", "must be >= 1");
  }
  cfg.png16 = get_bool(doc, "", "png16", cfg.png16);
  cfg.write_frames = get_bool(doc, "", "write_frames", cfg.write_frames);
  cfg.assets = get_string(doc, "", "assets", cfg.assets.string());
  cfg.tick_hz = get_number(doc, "", "tick_hz", cfg.tick_hz);
  if (!(cfg.tick_hz > 0.0 && cfg.tick_hz <= 1000.0)) config_fail("tick_hz", "must lie in (0, 1000]");
  if (doc.contains("bench")) {
    const json& b = doc.at("bench");
    reject_unknown(b, "bench", {"warmup", "frames"});
    cfg.bench.warmup = static_cast<std::int32_t>(get_int(b, "bench", "warmup", cfg.bench.warmup));
    cfg.bench.frames = static_cast<std::int32_t>(get_int(b, "bench", "frames", cfg.bench.frames));
    if (cfg.bench.warmup < 0) config_fail("bench.warmup", "must be >= 0");
    if (cfg.bench.frames < 1) config_fail("bench.frames", "must be >= 1");
  }
  return cfg;
}

RunConfig parse_run_config_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::kConfig, std::string("config is not valid JSON: ") + e.what());
  }
  return parse_run_config(doc);
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::kConfig, "cannot read config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  json doc;
  try {
    doc = json::parse(ss.str());
  } catch (const json::parse_error& e) {
    fail(ErrorKind::kConfig, "config file " + path.string() + " is not valid JSON: " + e.what());
  }
  if (doc.is_object() && doc.contains("config") && doc.contains("tool")) return parse_run_config(doc.at("config"));
  return parse_run_config(doc);
}

void check_paths(const RunConfig& cfg) {
  if (cfg.input && !std::filesystem::is_directory(*cfg.input)) {
    config_fail("input", "directory does not exist: " + cfg.input->string());
  }
  if (cfg.scanpath_path && !std::filesystem::is_regular_file(*cfg.scanpath_path)) {
    config_fail("scanpath.path", "file does not exist: " + cfg.scanpath_path->string());
  }
}

nlohmann::json RunConfig::to_json() const {
  json doc = json::object();
  if (scene) {
    const auto& o = scene->occluders;
    doc["scene"] = {{"id", to_string(scene->id)},
                    {"scale", scene->scale},
                    {"velocity", scene->velocity},
                    {"seed", scene->seed},
                    {"occluders",
                     {{"count", o.count}, {"width_px", o.width_px}, {"velocity", o.velocity}, {"depth", o.depth},
                      {"background_depth", o.background_depth}}}};
  }
  if (input) doc["input"] = input->string();
  json sp = json::object();
  if (scanpath_path) sp["path"] = scanpath_path->string();
  sp["synth"] = {{"fixations", scanpath_synth.fixations},
                 {"fixation_frames", scanpath_synth.fixation_frames},
                 {"saccade_deg", scanpath_synth.saccade_deg},
                 {"microsaccade_sigma_deg", scanpath_synth.microsaccade_sigma_deg},
                 {"seed", scanpath_synth.seed}};
  doc["scanpath"] = sp;
  json methods_json = json::array();
  for (Method m : methods) methods_json.push_back(to_string(m));
  doc["methods"] = methods_json;
  const auto& f = pipeline.foveation;
  doc["foveation"] = {{"method", foveation_method_name(f.method)},
                      {"fovea_deg", f.r_f * 2.0},
                      {"mid_radius_deg", f.mid_radius},
                      {"mid_block", f.mid_block},
                      {"far_block", f.far_block},
                      {"blend_deg", f.blend_deg},
                      {"sigma_max_px", f.sigma_max}};
  const auto& w = pipeline.weights;
  doc["weights"] = {{"a_k", w.a_k}, {"r_2k", w.r_2k}, {"r_ek", w.r_ek}, {"dc0", w.dc0}, {"r_m", w.r_m}};
  const auto& d = pipeline.display;
  doc["display"] = {{"width", d.width_px},
                    {"height", d.height_px},
                    {"horizontal_fov_deg", d.horizontal_fov_deg},
                    {"mapping", d.mapping == AngularMapping::kLinear ? "linear" : "perspective"}};
  doc["seed"] = pipeline.seed;
  doc["eps_rel"] = pipeline.eps_rel;
  doc["history_distance"] = pipeline.distance == HistoryDistance::kLightness ? "lightness" : "delta_e94";
  doc["foveal_guard"] = pipeline.foveal_guard;
  doc["temporal_bias"] = pipeline.temporal_bias;
  doc["threads"] = pipeline.threads;
  doc["out"] = out.string();
  if (frames) doc["frames"] = *frames;
  doc["png16"] = png16;
  doc["write_frames"] = write_frames;
  doc["assets"] = assets.string();
  doc["tick_hz"] = tick_hz;
  doc["bench"] = {{"warmup", bench.warmup}, {"frames", bench.frames}};
  return doc;
}

}  // namespace fovwrs
