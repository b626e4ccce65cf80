// Copyright 2026 The fovwrs Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "config.hpp"
#include "pipeline.hpp"

namespace fovwrs {

enum class LiveMethod : std::uint8_t { kFov = 0, kWrs = 1, kSideBySide = 2 };

inline constexpr std::uint8_t kPacketVersion = 1;
inline constexpr std::size_t kPacketHeaderBytes = 14;

struct PacketHeader {
  std::uint8_t version = 0;
  LiveMethod method = LiveMethod::kFov;
  std::uint32_t frame_index = 0;
  std::uint16_t width = 0;
  std::uint16_t height = 0;
};

/// "WRSF" | u8 version | u8 method | u32 frame | u16 width | u16 height | RGB8 rows.
std::vector<std::uint8_t> encode_packet(const PacketHeader& h, const Image& img);
/// Throws kParse on bad magic, version, or payload length.
PacketHeader decode_packet_header(const std::vector<std::uint8_t>& bytes);

/// The live simulation state machine, free of any networking. Its evolution is
/// a pure function of the sequence of apply() and tick() calls.
class LiveEngine {
 public:
  /// Requires a procedural scene.
  explicit LiveEngine(const RunConfig& cfg);

  /// Handles one client text message. Returns an error JSON document for
  /// malformed input; state is unchanged in that case.
  std::optional<std::string> apply(std::string_view text);

  /// Advances one step and returns the packet, or nothing while paused.
  std::optional<std::vector<std::uint8_t>> tick();

  LiveMethod method() const noexcept { return method_; }
  PixelPos gaze() const noexcept { return gaze_; }
  bool paused() const noexcept { return paused_; }
  const DisplayGeometry& display() const noexcept { return display_; }
  double fovea_deg() const noexcept { return foveation_.r_f * 2.0; }
  std::uint32_t packets_emitted() const noexcept { return next_packet_; }

 private:
  void rebuild();
  void apply_config(const nlohmann::json& msg);

  RunConfig cfg_;
  SceneSpec scene_;
  DisplayGeometry display_;
  FoveationConfig foveation_;
  std::optional<TemporalPipeline> wrs_;
  LiveMethod method_ = LiveMethod::kWrs;
  PixelPos gaze_;
  bool paused_ = false;
  std::int64_t scene_time_ = 0;
  std::uint32_t next_packet_ = 0;
};

std::string live_method_name(LiveMethod m);

}  // namespace fovwrs
