// Copyright 2026 The fovwrs Authors
// SPDX-License-Identifier: Apache-2.0

// fovwrs command line: simulate, bench, serve, scanpath synth.
// Exit codes: 0 success, 2 configuration error, 3 runtime error.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "fovwrs/fovwrs.h"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

struct Overrides {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> method;
  std::optional<std::string> out;
  std::optional<std::int64_t> frames;
  std::optional<double> fovea_deg;
};

struct Failure {
  int code;
  std::string message;
};

int exit_code(fovwrs_status s) {
  return s == FOVWRS_E_CONFIG ? kExitConfig : kExitRuntime;
}

void check(fovwrs_status s) {
  if (s != FOVWRS_OK) throw Failure{exit_code(s), fovwrs_last_error()};
}

std::string take(char* s) {
  std::string out(s ? s : "");
  fovwrs_string_free(s);
  return out;
}

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config, "JSON config file (a run manifest also works)");
  cmd->add_option("--seed", o.seed, "64-bit seed");
  cmd->add_option("--method", o.method, "fov, wrs or both")->check(CLI::IsMember({"fov", "wrs", "both"}));
  cmd->add_option("--out", o.out, "output location");
  cmd->add_option("--frames", o.frames, "frame count");
  cmd->add_option("--fovea-deg", o.fovea_deg, "fovea diameter in degrees");
}

// Resolved config text: file (or defaults) with flag overrides applied.
std::string build_config(const Overrides& o, bool bench = false) {
  char* resolved = nullptr;
  check(o.config.empty() ? fovwrs_config_resolve("{}", &resolved) : fovwrs_config_load(o.config.c_str(), &resolved));
  nlohmann::json doc = nlohmann::json::parse(take(resolved));
  if (o.seed) doc["seed"] = *o.seed;
  if (o.method) {
    doc["methods"] = *o.method == "both" ? nlohmann::json{"fov", "wrs"} : nlohmann::json{*o.method};
  }
  if (o.out) doc["out"] = *o.out;
  if (o.frames) (bench ? doc["bench"]["frames"] : doc["frames"]) = *o.frames;
  if (o.fovea_deg) doc["foveation"]["fovea_deg"] = *o.fovea_deg;
  return doc.dump();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Foveated rendering with temporal weighted reservoir sampling"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(fovwrs_version()));

  Overrides sim_o, bench_o, serve_o, synth_o;
  auto* sim = app.add_subcommand("simulate", "Replay a scene under fov and/or wrs; write frames, metrics, manifest");
  add_common(sim, sim_o);
  auto* bench = app.add_subcommand("bench", "Per-stage timings of the wrs step");
  add_common(bench, bench_o);
  auto* serve = app.add_subcommand("serve", "Live websocket service");
  add_common(serve, serve_o);
  std::string host = "127.0.0.1";
  std::uint16_t port = 8080;
  serve->add_option("--host", host, "bind address");
  serve->add_option("--port", port, "TCP port (0 = any free port)");
  auto* scanpath = app.add_subcommand("scanpath", "Scanpath utilities");
  scanpath->require_subcommand(1);
  auto* synth = scanpath->add_subcommand("synth", "Write a synthetic fixation/saccade scanpath CSV");
  add_common(synth, synth_o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (sim->parsed()) {
      const std::string cfg = build_config(sim_o);
      char* manifest = nullptr;
      check(fovwrs_simulate(cfg.c_str(), &manifest));
      const nlohmann::json m = nlohmann::json::parse(take(manifest));
      std::cout << "wrote " << m["config"]["out"].get<std::string>() << " (" << m["config"]["frames"] << " frames, seed "
                << m["seed"] << ")\n";
    } else if (bench->parsed()) {
      const std::string cfg = build_config(bench_o, true);
      char* report = nullptr;
      check(fovwrs_bench(cfg.c_str(), &report));
      std::cout << take(report) << '\n';
    } else if (serve->parsed()) {
      const std::string cfg = build_config(serve_o);
      fovwrs_server* server = nullptr;
      check(fovwrs_server_create(cfg.c_str(), host.c_str(), port, &server));
      check(fovwrs_server_start(server));
      std::cout << "listening on http://" << host << ':' << fovwrs_server_port(server) << " (ws /stream)" << std::endl;
      const fovwrs_status s = fovwrs_server_run(server);
      fovwrs_server_destroy(server);
      check(s);
    } else if (synth->parsed()) {
      if (!synth_o.out) throw Failure{kExitConfig, "scanpath synth: --out FILE is required"};
      Overrides o = synth_o;
      const std::string path = *o.out;
      o.out.reset();
      const std::string cfg = build_config(o);
      check(fovwrs_scanpath_synth(cfg.c_str(), path.c_str()));
      std::cout << "wrote " << path << '\n';
    }
  } catch (const Failure& f) {
    std::cerr << "fovwrs: " << f.message << '\n';
    return f.code;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "fovwrs: " << e.what() << '\n';
    return kExitConfig;
  }
  return 0;
}
