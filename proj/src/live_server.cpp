// Copyright 2026 The fovwrs Authors
// SPDX-License-Identifier: Apache-2.0

#include "live_server.hpp"

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <deque>
#include <fstream>
#include <iostream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>
#include <vector>

#include <boost/asio/ip/tcp.hpp>
#include <boost/asio/post.hpp>
#include <boost/asio/signal_set.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>

#include "errors.hpp"
#include "live_engine.hpp"

namespace fovwrs {

namespace {

namespace asio = boost::asio;
namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
using tcp = asio::ip::tcp;

// A client that falls this far behind is disconnected rather than buffered without bound.
constexpr std::size_t kMaxQueuedPackets = 120;

const char* kPlaceholderPage =
    "<!doctype html><html><head><meta charset=\"utf-8\"><title>fovwrs</title></head><body>"
    "<p>fovwrs live service. Viewer assets were not found; the websocket stream is at <code>/stream</code>.</p>"
    "</body></html>";

std::string mime_type(const std::filesystem::path& p) {
  const std::string ext = p.extension().string();
  if (ext == ".html" || ext == ".htm") return "text/html; charset=utf-8";
  if (ext == ".js" || ext == ".mjs") return "text/javascript";
  if (ext == ".css") return "text/css";
  if (ext == ".json" || ext == ".map") return "application/json";
  if (ext == ".png") return "image/png";
  if (ext == ".svg") return "image/svg+xml";
  if (ext == ".wasm") return "application/wasm";
  return "application/octet-stream";
}

class WsSession;

struct Inbound {
  std::weak_ptr<WsSession> from;
  std::string text;
};

// State shared between the io thread and the simulation thread.
struct Hub {
  asio::io_context& io;
  std::filesystem::path assets;
  std::set<std::shared_ptr<WsSession>> sessions;  // io thread only
  std::mutex mu;
  std::vector<Inbound> inbox;  // guarded by mu

  void push(Inbound msg) {
    std::lock_guard lock(mu);
    inbox.push_back(std::move(msg));
  }
  std::vector<Inbound> drain() {
    std::lock_guard lock(mu);
    return std::exchange(inbox, {});
  }
};

class WsSession : public std::enable_shared_from_this<WsSession> {
 public:
  WsSession(tcp::socket&& socket, Hub& hub) : ws_(std::move(socket)), hub_(hub) {}

  void start(http::request<http::string_body> req) {
    ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
    ws_.async_accept(req, [self = shared_from_this()](beast::error_code ec) {
      if (ec) return;
      self->hub_.sessions.insert(self);
      self->read();
    });
  }

  // io thread only.
  void send(std::shared_ptr<const std::string> payload, bool binary) {
    if (closed_) return;
    if (binary && ++queued_packets_ > kMaxQueuedPackets) {
      close();
      return;
    }
    queue_.push_back({std::move(payload), binary});
    if (queue_.size() == 1) write_next();
  }

 private:
  struct Outgoing {
    std::shared_ptr<const std::string> data;
    bool binary;
  };

  void read() {
    ws_.async_read(buffer_, [self = shared_from_this()](beast::error_code ec, std::size_t) {
      if (ec) {
        self->close();
        return;
      }
      if (self->ws_.got_text()) {
        self->hub_.push(Inbound{self, beast::buffers_to_string(self->buffer_.data())});
      } else {
        self->send(std::make_shared<const std::string>(
                       R"({"type":"error","detail":"binary messages are not accepted"})"),
                   false);
      }
      self->buffer_.consume(self->buffer_.size());
      self->read();
    });
  }

  void write_next() {
    const Outgoing& o = queue_.front();
    ws_.binary(o.binary);
    ws_.async_write(asio::buffer(*o.data), [self = shared_from_this()](beast::error_code ec, std::size_t) {
      if (ec) {
        self->close();
        return;
      }
      if (self->queue_.front().binary) --self->queued_packets_;
      self->queue_.pop_front();
      if (!self->queue_.empty()) self->write_next();
    });
  }

  void close() {
    if (closed_) return;
    closed_ = true;
    hub_.sessions.erase(shared_from_this());
    beast::error_code ignored;
    beast::get_lowest_layer(ws_).socket().close(ignored);
  }

  websocket::stream<beast::tcp_stream> ws_;
  Hub& hub_;
  beast::flat_buffer buffer_;
  std::deque<Outgoing> queue_;
  std::size_t queued_packets_ = 0;
  bool closed_ = false;
};

class HttpSession : public std::enable_shared_from_this<HttpSession> {
 public:
  HttpSession(tcp::socket&& socket, Hub& hub) : stream_(std::move(socket)), hub_(hub) {}

  void read() {
    req_ = {};
    stream_.expires_after(std::chrono::seconds(30));
    http::async_read(stream_, buffer_, req_, [self = shared_from_this()](beast::error_code ec, std::size_t) {
      if (ec) return;
      self->handle();
    });
  }

 private:
  void handle() {
    if (websocket::is_upgrade(req_)) {
      if (req_.target() == "/stream") {
        stream_.expires_never();
        std::make_shared<WsSession>(stream_.release_socket(), hub_)->start(std::move(req_));
        return;
      }
      respond(http::status::not_found, "text/plain", "websocket endpoint is /stream\n");
      return;
    }
    if (req_.method() != http::verb::get && req_.method() != http::verb::head) {
      respond(http::status::method_not_allowed, "text/plain", "GET only\n");
      return;
    }
    std::string target(req_.target());
    if (const auto q = target.find('?'); q != std::string::npos) target.resize(q);
    if (target == "/healthz") {
      respond(http::status::ok, "text/plain", "ok");
      return;
    }
    if (target.find("..") != std::string::npos || target.empty() || target.front() != '/') {
      respond(http::status::bad_request, "text/plain", "bad path\n");
      return;
    }
    if (target == "/") target = "/index.html";
    const std::filesystem::path file = hub_.assets / target.substr(1);
    std::ifstream in(file, std::ios::binary);
    if (in && std::filesystem::is_regular_file(file)) {
      std::ostringstream ss;
      ss << in.rdbuf();
      respond(http::status::ok, mime_type(file), ss.str());
    } else if (target == "/index.html") {
      respond(http::status::ok, "text/html; charset=utf-8", kPlaceholderPage);
    } else {
      respond(http::status::not_found, "text/plain", "not found\n");
    }
  }

  void respond(http::status status, const std::string& type, std::string body) {
    auto res = std::make_shared<http::response<http::string_body>>(status, req_.version());
    res->set(http::field::server, "fovwrs");
    res->set(http::field::content_type, type);
    res->keep_alive(req_.keep_alive());
    res->body() = std::move(body);
    res->prepare_payload();
    http::async_write(stream_, *res, [self = shared_from_this(), res](beast::error_code ec, std::size_t) {
      if (ec) return;
      if (res->keep_alive()) {
        self->read();
      } else {
        beast::error_code ignored;
        self->stream_.socket().shutdown(tcp::socket::shutdown_send, ignored);
      }
    });
  }

  beast::tcp_stream stream_;
  Hub& hub_;
  beast::flat_buffer buffer_;
  http::request<http::string_body> req_;
};

}  // namespace

struct LiveServer::Impl {
  asio::io_context io{1};
  tcp::acceptor acceptor{io};
  Hub hub{io, {}, {}, {}, {}};
  LiveEngine engine;
  std::chrono::nanoseconds period;
  std::thread io_thread;
  std::thread sim_thread;
  std::atomic<bool> stopping{false};
  std::mutex stop_mu;
  std::condition_variable stop_cv;
  bool started = false;
  bool stopped = false;

  Impl(const RunConfig& cfg, const ServerOptions& opts)
      : engine(cfg),
        period(std::chrono::nanoseconds(static_cast<std::int64_t>(1e9 / cfg.tick_hz))) {
    hub.assets = cfg.assets;
    try {
      const tcp::endpoint ep(asio::ip::make_address(opts.host), opts.port);
      acceptor.open(ep.protocol());
      acceptor.set_option(asio::socket_base::reuse_address(true));
      acceptor.bind(ep);
      acceptor.listen();
    } catch (const boost::system::system_error& e) {
      fail(ErrorKind::kNetwork, "cannot listen on " + opts.host + ":" + std::to_string(opts.port) + ": " + e.what());
    }
  }

  void accept() {
    acceptor.async_accept([this](beast::error_code ec, tcp::socket socket) {
      if (ec) return;  // acceptor closed
      std::make_shared<HttpSession>(std::move(socket), hub)->read();
      accept();
    });
  }

  void simulate() {
    auto next = std::chrono::steady_clock::now();
    while (!stopping.load()) {
      for (Inbound& msg : hub.drain()) {
        if (auto err = engine.apply(msg.text)) {
          auto payload = std::make_shared<const std::string>(std::move(*err));
          asio::post(io, [from = msg.from, payload] {
            if (auto s = from.lock()) s->send(payload, false);
          });
        }
      }
      try {
        if (auto packet = engine.tick()) {
          auto payload = std::make_shared<const std::string>(packet->begin(), packet->end());
          asio::post(io, [this, payload] {
            // Copy: send() may drop a session from the set.
            const auto sessions = hub.sessions;
            for (const auto& s : sessions) s->send(payload, true);
          });
        }
      } catch (const std::exception& e) {
        std::cerr << "fovwrs serve: tick failed: " << e.what() << '\n';
      }
      next += period;
      const auto now = std::chrono::steady_clock::now();
      if (next < now) next = now;  // overrun: do not try to catch up
      std::unique_lock lock(stop_mu);
      stop_cv.wait_until(lock, next, [this] { return stopping.load(); });
    }
  }
};

LiveServer::LiveServer(const RunConfig& cfg, const ServerOptions& opts) : impl_(std::make_unique<Impl>(cfg, opts)) {}

LiveServer::~LiveServer() { stop(); }

std::uint16_t LiveServer::port() const noexcept { return impl_->acceptor.local_endpoint().port(); }

void LiveServer::start() {
  Impl& s = *impl_;
  if (s.started) return;
  s.started = true;
  s.accept();
  s.io_thread = std::thread([&s] { s.io.run(); });
  s.sim_thread = std::thread([&s] { s.simulate(); });
}

void LiveServer::stop() {
  Impl& s = *impl_;
  {
    std::lock_guard lock(s.stop_mu);
    if (s.stopped) return;
    s.stopped = true;
    s.stopping = true;
  }
  s.stop_cv.notify_all();
  if (s.sim_thread.joinable()) s.sim_thread.join();
  asio::post(s.io, [&s] {
    beast::error_code ignored;
    s.acceptor.close(ignored);
    s.io.stop();
  });
  if (s.io_thread.joinable()) s.io_thread.join();
}

void LiveServer::run_until_signal() {
  start();
  asio::io_context sig_io;
  asio::signal_set signals(sig_io, SIGINT, SIGTERM);
  signals.async_wait([](const beast::error_code&, int) {});
  std::thread waker([this, &sig_io] {
    std::unique_lock lock(impl_->stop_mu);
    impl_->stop_cv.wait(lock, [this] { return impl_->stopping.load(); });
    sig_io.stop();
  });
  sig_io.run();
  stop();
  waker.join();
}

}  // namespace fovwrs
