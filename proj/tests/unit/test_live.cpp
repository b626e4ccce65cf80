// Copyright 2026 The fovwrs Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <json.hpp>

#include "errors.hpp"
#include "live_engine.hpp"

namespace fovwrs {
namespace {

RunConfig live_config() {
  RunConfig c = parse_run_config_text(R"({"scene": {"id": "perlin_texture", "scale": 12},
      "display": {"width": 96, "height": 64, "pixels_per_degree": 16}, "seed": 3})");
  return c;
}

std::vector<std::uint8_t> payload(const std::vector<std::uint8_t>& packet) {
  return {packet.begin() + kPacketHeaderBytes, packet.end()};
}

TEST(Packet, HeaderLayout) {
  Image img(3, 2, Rgb{1.0f, 0.0f, 0.5f});
  const auto bytes = encode_packet({kPacketVersion, LiveMethod::kSideBySide, 0x01020304u, 3, 2}, img);
  ASSERT_EQ(bytes.size(), 14u + 18u);
  EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 4), "WRSF");
  EXPECT_EQ(bytes[4], 1);
  EXPECT_EQ(bytes[5], 2);
  EXPECT_EQ(bytes[6], 0x04);
  EXPECT_EQ(bytes[9], 0x01);
  EXPECT_EQ(bytes[10], 3);
  EXPECT_EQ(bytes[12], 2);
  EXPECT_EQ(bytes[14], 255);
  EXPECT_EQ(bytes[15], 0);
  EXPECT_EQ(bytes[16], 128);
  const PacketHeader h = decode_packet_header(bytes);
  EXPECT_EQ(h.frame_index, 0x01020304u);
  EXPECT_EQ(h.method, LiveMethod::kSideBySide);

  auto bad = bytes;
  bad.pop_back();
  EXPECT_THROW(decode_packet_header(bad), Error);
  bad = bytes;
  bad[0] = 'X';
  EXPECT_THROW(decode_packet_header(bad), Error);
  bad = bytes;
  bad[5] = 3;
  EXPECT_THROW(decode_packet_header(bad), Error);
}

TEST(LiveEngine, DefaultsToCenterGazeAndClamps) {
  LiveEngine e(live_config());
  EXPECT_EQ(e.gaze().x, 47.5);
  EXPECT_EQ(e.gaze().y, 31.5);
  EXPECT_EQ(e.method(), LiveMethod::kWrs);
  EXPECT_FALSE(e.apply(R"({"type":"gaze","x":-50,"y":1e6,"t":12})"));
  EXPECT_EQ(e.gaze().x, 0.0);
  EXPECT_EQ(e.gaze().y, 63.0);
}

TEST(LiveEngine, MalformedMessagesLeaveStateAlone) {
  LiveEngine e(live_config());
  for (const char* msg : {"not json", "[]", R"({"x":1,"y":2})", R"({"type":"gaze","x":"a","y":2})",
                          R"({"type":"gaze","x":1})", R"({"type":"dance"})",
                          R"({"type":"config","method":"best"})", R"({"type":"config","fovea_deg":-1})",
                          R"({"type":"config","width":8})", R"({"type":"config","method":"fov","bogus":1})",
                          R"({"type":"config","paused":"yes"})"}) {
    const auto err = e.apply(msg);
    ASSERT_TRUE(err.has_value()) << msg;
    const auto j = nlohmann::json::parse(*err);
    EXPECT_EQ(j["type"], "error");
    EXPECT_TRUE(j["detail"].is_string());
  }
  EXPECT_EQ(e.method(), LiveMethod::kWrs);  // the partially valid message was not applied
  EXPECT_EQ(e.gaze().x, 47.5);
  EXPECT_EQ(e.display().width_px, 96);
}

TEST(LiveEngine, MethodSwitchShowsOnNextPacket) {
  LiveEngine e(live_config());
  EXPECT_EQ(decode_packet_header(*e.tick()).method, LiveMethod::kWrs);
  ASSERT_FALSE(e.apply(R"({"type":"config","method":"fov"})"));
  EXPECT_EQ(decode_packet_header(*e.tick()).method, LiveMethod::kFov);
  ASSERT_FALSE(e.apply(R"({"type":"config","method":"side-by-side"})"));
  EXPECT_EQ(decode_packet_header(*e.tick()).method, LiveMethod::kSideBySide);
}

TEST(LiveEngine, FrameIndexIncreasesAndPauseStops) {
  LiveEngine e(live_config());
  std::uint32_t last = 0;
  for (int i = 0; i < 4; ++i) {
    const PacketHeader h = decode_packet_header(*e.tick());
    if (i > 0) EXPECT_GT(h.frame_index, last);
    last = h.frame_index;
  }
  ASSERT_FALSE(e.apply(R"({"type":"config","paused":true})"));
  EXPECT_FALSE(e.tick().has_value());
  ASSERT_FALSE(e.apply(R"({"type":"config","paused":false})"));
  EXPECT_EQ(decode_packet_header(*e.tick()).frame_index, last + 1);
}

TEST(LiveEngine, ReplayIsByteIdentical) {
  const std::vector<std::vector<std::string>> log = {
      {},
      {R"({"type":"gaze","x":10,"y":10,"t":1})"},
      {R"({"type":"gaze","x":11,"y":12,"t":2})", R"({"type":"config","method":"side-by-side"})"},
      {R"({"type":"config","fovea_deg":8})"},
      {R"({"type":"gaze","x":80,"y":40,"t":3})"},
      {R"({"type":"config","width":48,"height":32})"},
      {},
  };
  auto play = [&] {
    LiveEngine e(live_config());
    std::vector<std::vector<std::uint8_t>> packets;
    for (const auto& tick_msgs : log) {
      for (const auto& m : tick_msgs) EXPECT_FALSE(e.apply(m)) << m;
      packets.push_back(*e.tick());
    }
    return packets;
  };
  const auto a = play(), b = play();
  EXPECT_EQ(a, b);
  const PacketHeader last = decode_packet_header(a.back());
  EXPECT_EQ(last.width, 48);
  EXPECT_EQ(last.height, 32);
}

TEST(LiveEngine, SideBySideHalves) {
  LiveEngine fov(live_config()), wrs(live_config()), sbs(live_config());
  ASSERT_FALSE(fov.apply(R"({"type":"config","method":"fov"})"));
  ASSERT_FALSE(sbs.apply(R"({"type":"config","method":"side-by-side"})"));
  for (auto* e : {&fov, &wrs, &sbs}) ASSERT_FALSE(e->apply(R"({"type":"gaze","x":20,"y":20})"));
  for (int t = 0; t < 5; ++t) {
    const auto pf = payload(*fov.tick()), pw = payload(*wrs.tick()), ps = payload(*sbs.tick());
    for (std::size_t y = 0; y < 64; ++y) {
      for (std::size_t x = 0; x < 96; ++x) {
        const std::size_t i = 3 * (y * 96 + x);
        const auto& ref = x < 48 ? pf : pw;
        ASSERT_TRUE(std::equal(ps.begin() + i, ps.begin() + i + 3, ref.begin() + i)) << x << "," << y;
      }
    }
  }
}

TEST(LiveEngine, GazeJumpRecentersFovea) {
  RunConfig cfg = live_config();
  LiveEngine e(cfg);
  for (int t = 0; t < 3; ++t) e.tick();
  ASSERT_FALSE(e.apply(R"({"type":"gaze","x":80,"y":50})"));
  const auto p = payload(*e.tick());
  // Static scene: the fovea around the new gaze shows the ground truth.
  const Image truth = render_procedural(*cfg.scene, 0, e.display()).color;
  const std::vector<std::uint8_t> ref = to_rgb8(truth);
  for (int y = 48; y <= 52; ++y) {
    for (int x = 78; x <= 82; ++x) {
      const std::size_t i = 3 * (std::size_t(y) * 96 + std::size_t(x));
      EXPECT_TRUE(std::equal(p.begin() + i, p.begin() + i + 3, ref.begin() + i)) << x << "," << y;
    }
  }
}

TEST(LiveEngine, ResizePreservesDensity) {
  LiveEngine e(live_config());
  ASSERT_FALSE(e.apply(R"({"type":"config","width":192,"height":128})"));
  EXPECT_DOUBLE_EQ(e.display().pixels_per_degree(), 16.0);
  const PacketHeader h = decode_packet_header(*e.tick());
  EXPECT_EQ(h.width, 192);
  EXPECT_EQ(h.height, 128);
  ASSERT_FALSE(e.apply(R"({"type":"config","fovea_deg":6})"));
  EXPECT_DOUBLE_EQ(e.fovea_deg(), 6.0);
}

TEST(LiveEngine, RequiresScene) {
  RunConfig c = live_config();
  c.scene.reset();
  EXPECT_THROW(LiveEngine{c}, Error);
}

}  // namespace
}  // namespace fovwrs
