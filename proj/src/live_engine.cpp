// Copyright 2026 The fovwrs Authors
// SPDX-License-Identifier: Apache-2.0

#include "live_engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "errors.hpp"

namespace fovwrs {

namespace {

using nlohmann::json;

constexpr std::int32_t kMinSide = 16;
constexpr std::int32_t kMaxWidth = 3840;
constexpr std::int32_t kMaxHeight = 2160;

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xff));
}

std::string error_json(const std::string& detail) { return json{{"type", "error"}, {"detail", detail}}.dump(); }

// Message validation failures; never escape apply().
struct BadMessage {
  std::string detail;
};

double finite_number(const json& msg, const char* key) {
  if (!msg.contains(key) || !msg.at(key).is_number()) throw BadMessage{std::string("'") + key + "' must be a number"};
  const double v = msg.at(key).get<double>();
  if (!std::isfinite(v)) throw BadMessage{std::string("'") + key + "' must be finite"};
  return v;
}

}  // namespace

std::string live_method_name(LiveMethod m) {
  switch (m) {
    case LiveMethod::kFov: return "fov";
    case LiveMethod::kWrs: return "wrs";
    case LiveMethod::kSideBySide: return "side-by-side";
  }
  return "?";
}

std::vector<std::uint8_t> encode_packet(const PacketHeader& h, const Image& img) {
  if (img.width() != h.width || img.height() != h.height) fail(ErrorKind::kInvalidInput, "packet header/image size mismatch");
  std::vector<std::uint8_t> out;
  out.reserve(kPacketHeaderBytes + 3 * img.size());
  for (char c : {'W', 'R', 'S', 'F'}) out.push_back(static_cast<std::uint8_t>(c));
  out.push_back(h.version);
  out.push_back(static_cast<std::uint8_t>(h.method));
  put_u32(out, h.frame_index);
  put_u16(out, h.width);
  put_u16(out, h.height);
  const std::vector<std::uint8_t> rgb = to_rgb8(img);
  out.insert(out.end(), rgb.begin(), rgb.end());
  return out;
}

PacketHeader decode_packet_header(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < kPacketHeaderBytes || std::memcmp(bytes.data(), "WRSF", 4) != 0) {
    fail(ErrorKind::kParse, "not a frame packet");
  }
  PacketHeader h;
  h.version = bytes[4];
  if (h.version != kPacketVersion) fail(ErrorKind::kParse, "unsupported packet version");
  if (bytes[5] > 2) fail(ErrorKind::kParse, "bad method byte");
  h.method = static_cast<LiveMethod>(bytes[5]);
  h.frame_index = static_cast<std::uint32_t>(bytes[6]) | static_cast<std::uint32_t>(bytes[7]) << 8 |
                  static_cast<std::uint32_t>(bytes[8]) << 16 | static_cast<std::uint32_t>(bytes[9]) << 24;
  h.width = static_cast<std::uint16_t>(bytes[10] | bytes[11] << 8);
  h.height = static_cast<std::uint16_t>(bytes[12] | bytes[13] << 8);
  if (bytes.size() != kPacketHeaderBytes + 3u * h.width * h.height) fail(ErrorKind::kParse, "payload length mismatch");
  return h;
}

LiveEngine::LiveEngine(const RunConfig& cfg) : cfg_(cfg) {
  if (!cfg.scene) fail(ErrorKind::kConfig, "config field 'scene': live mode requires a procedural scene");
  scene_ = *cfg.scene;
  display_ = cfg.pipeline.display;
  foveation_ = cfg.pipeline.foveation;
  if (display_.width_px > kMaxWidth || display_.height_px > kMaxHeight) {
    fail(ErrorKind::kConfig, "config field 'display': live mode is limited to 3840x2160");
  }
  rebuild();
}

void LiveEngine::rebuild() {
  PipelineConfig pc = cfg_.pipeline;
  pc.display = display_;
  pc.foveation = foveation_;
  pc.weights.r_f = foveation_.r_f;
  wrs_.emplace(pc);
  gaze_ = PixelPos{(display_.width_px - 1) / 2.0, (display_.height_px - 1) / 2.0};
}

void LiveEngine::apply_config(const json& msg) {
  std::optional<LiveMethod> method;
  std::optional<double> fovea;
  std::optional<std::int32_t> width, height;
  std::optional<bool> paused;
  for (const auto& [key, value] : msg.items()) {
    if (key == "type" || key == "t") continue;
    if (key == "method") {
      const std::string m = value.is_string() ? value.get<std::string>() : "";
      if (m == "fov") {
        method = LiveMethod::kFov;
      } else if (m == "wrs") {
        method = LiveMethod::kWrs;
      } else if (m == "side-by-side") {
        method = LiveMethod::kSideBySide;
      } else {
        throw BadMessage{"'method' must be \"fov\", \"wrs\" or \"side-by-side\""};
      }
    } else if (key == "fovea_deg") {
      const double d = finite_number(msg, "fovea_deg");
      if (!(d > 0.0 && d / 2.0 < foveation_.mid_radius)) throw BadMessage{"'fovea_deg' out of range"};
      fovea = d;
    } else if (key == "width" || key == "height") {
      if (!value.is_number_integer()) throw BadMessage{"'" + key + "' must be an integer"};
      const std::int64_t v = value.get<std::int64_t>();
      const std::int64_t hi = key == "width" ? kMaxWidth : kMaxHeight;
      if (v < kMinSide || v > hi) throw BadMessage{"'" + key + "' out of range"};
      (key == "width" ? width : height) = static_cast<std::int32_t>(v);
    } else if (key == "paused") {
      if (!value.is_boolean()) throw BadMessage{"'paused' must be a boolean"};
      paused = value.get<bool>();
    } else {
      throw BadMessage{"unknown config key '" + key + "'"};
    }
  }
  // Validated in full above; commit atomically.
  if (method) method_ = *method;
  if (paused) paused_ = *paused;
  if (fovea) {
    foveation_.r_f = *fovea / 2.0;
    wrs_->set_foveation(foveation_);
  }
  if (width || height) {
    const double ppd = display_.pixels_per_degree();
    display_.width_px = width.value_or(display_.width_px);
    display_.height_px = height.value_or(display_.height_px);
    display_.horizontal_fov_deg = display_.width_px / ppd;
    rebuild();
  }
}

std::optional<std::string> LiveEngine::apply(std::string_view text) {
  json msg;
  try {
    msg = json::parse(text);
  } catch (const json::parse_error&) {
    return error_json("message is not valid JSON");
  }
  try {
    if (!msg.is_object() || !msg.contains("type") || !msg.at("type").is_string()) {
      throw BadMessage{"message must be an object with a string 'type'"};
    }
    const std::string type = msg.at("type").get<std::string>();
    if (type == "gaze") {
      const double x = finite_number(msg, "x");
      const double y = finite_number(msg, "y");
      gaze_ = PixelPos{std::clamp(x, 0.0, display_.width_px - 1.0), std::clamp(y, 0.0, display_.height_px - 1.0)};
    } else if (type == "config") {
      apply_config(msg);
    } else {
      throw BadMessage{"unknown message type '" + type + "'"};
    }
  } catch (const BadMessage& e) {
    return error_json(e.detail);
  }
  return std::nullopt;
}

std::optional<std::vector<std::uint8_t>> LiveEngine::tick() {
  if (paused_) return std::nullopt;
  const FrameBundle bundle = render_procedural(scene_, scene_time_, display_);
  // The wrs history advances every tick so switching methods shows a warm reservoir.
  StepResult wrs = wrs_->step(bundle, gaze_);
  Image out;
  switch (method_) {
    case LiveMethod::kWrs:
      out = std::move(wrs.output);
      break;
    case LiveMethod::kFov:
      out = std::move(wrs.foveated);
      break;
    case LiveMethod::kSideBySide: {
      out = std::move(wrs.foveated);
      const std::int32_t half = display_.width_px / 2;
      for (std::int32_t y = 0; y < display_.height_px; ++y) {
        for (std::int32_t x = half; x < display_.width_px; ++x) out.at(x, y) = wrs.output.at(x, y);
      }
      break;
    }
  }
  ++scene_time_;
  PacketHeader h{kPacketVersion, method_, next_packet_++, static_cast<std::uint16_t>(display_.width_px),
                 static_cast<std::uint16_t>(display_.height_px)};
  return encode_packet(h, out);
}

}  // namespace fovwrs
