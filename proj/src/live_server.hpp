// Copyright 2026 The fovwrs Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>

#include "config.hpp"

namespace fovwrs {

struct ServerOptions {
  std::string host = "127.0.0.1";
  std::uint16_t port = 8080;  // 0 picks a free port
};

/// Websocket front end for LiveEngine.
///
/// Threads: one io thread runs all sockets; one simulation thread owns the
/// engine, drains the inbound message queue before every tick, and posts each
/// packet back to the io thread for fan-out.
class LiveServer {
 public:
  /// Binds immediately; a busy port raises kNetwork.
  LiveServer(const RunConfig& cfg, const ServerOptions& opts);
  ~LiveServer();
  LiveServer(const LiveServer&) = delete;
  LiveServer& operator=(const LiveServer&) = delete;

  std::uint16_t port() const noexcept;
  void start();
  /// Idempotent; safe from any thread except the io thread.
  void stop();
  /// Blocks until stop() is called or SIGINT/SIGTERM arrives.
  void run_until_signal();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace fovwrs
