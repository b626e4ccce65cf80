// Copyright 2026 The fovwrs Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace fovwrs {

/// Resolves a configured thread count; 0 means hardware concurrency.
inline int resolve_threads(int requested) noexcept {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Runs body(y) for every row in [0, rows), split into contiguous bands.
/// Callers must write only to per-row state; results never depend on `threads`.
template <typename Body>
void parallel_rows(std::int32_t rows, int threads, Body&& body) {
  const int n = std::max(1, std::min<int>(threads, rows));
  if (n == 1) {
    for (std::int32_t y = 0; y < rows; ++y) body(y);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
  pool.reserve(static_cast<std::size_t>(n));
  for (int t = 0; t < n; ++t) {
    const std::int32_t begin = static_cast<std::int32_t>(static_cast<std::int64_t>(rows) * t / n);
    const std::int32_t end = static_cast<std::int32_t>(static_cast<std::int64_t>(rows) * (t + 1) / n);
    pool.emplace_back([&, t, begin, end] {
      try {
        for (std::int32_t y = begin; y < end; ++y) body(y);
      } catch (...) {
        errors[static_cast<std::size_t>(t)] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace fovwrs
