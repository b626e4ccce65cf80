// Copyright 2026 The fovwrs Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Single-slot weighted reservoir sampling (A-Chao update, two-reservoir
// combine) and the temporal bias policies applied to a reservoir's weight sum.

#include <cmath>
#include <cstdint>
#include <string>

#include "errors.hpp"
#include "rng.hpp"

namespace fovwrs {

/// A reservoir of capacity one. `m == 0` marks the empty reservoir, which is
/// the identity element for combine().
///
/// Unbiased operations keep w_sum >= w >= 0. The bias functions scale w_sum
/// alone, so a biased reservoir may hold w_sum < w.
template <typename Payload>
struct Reservoir {
  Payload sample{};
  double w = 0.0;
  double w_sum = 0.0;
  std::uint32_t m = 0;

  bool empty() const noexcept { return m == 0; }
};

namespace detail {
inline void require_weight(double w, const char* what) {
  if (!(w >= 0.0) || !std::isfinite(w)) {
    fail(ErrorKind::kInvalidInput, std::string(what) + " must be finite and non-negative, got " +
                                       std::to_string(w));
  }
}
}  // namespace detail

/// A-Chao update: adds w_i to w_sum and replaces the held sample iff
/// u * w_sum' < w_i.
template <typename Payload>
Reservoir<Payload> update(Reservoir<Payload> res, const Payload& candidate, double w_i,
                          RandomDraw u) {
  detail::require_weight(w_i, "candidate weight");
  res.w_sum += w_i;
  res.m += 1;
  if (u.value() * res.w_sum < w_i) {
    res.sample = candidate;
    res.w = w_i;
  }
  return res;
}

/// Merges two reservoirs as if one A-Chao pass had seen both streams. r1 is
/// kept iff u * (r1.w_sum + r2.w_sum) <= r1.w_sum. Empty inputs are identities.
template <typename Payload>
Reservoir<Payload> combine(const Reservoir<Payload>& r1, const Reservoir<Payload>& r2,
                           RandomDraw u) noexcept {
  if (r1.empty()) return Reservoir<Payload>{r2.sample, r2.w, r2.w_sum, r2.m};
  if (r2.empty()) return r1;
  const double total = r1.w_sum + r2.w_sum;
  Reservoir<Payload> out = (u.value() * total <= r1.w_sum) ? r1 : r2;
  out.w_sum = total;
  out.m = r1.m + r2.m;
  return out;
}

/// Probability that the held sample survives a comparison against a candidate
/// of weight w_i: 1 - w_i / (history_wsum + w_i).
double survival_probability(double history_wsum, double w_i);

/// Scales r1.w_sum by its survival probability against `incoming_wsum`.
template <typename Payload>
Reservoir<Payload> bias_wsum(Reservoir<Payload> r1, double incoming_wsum) {
  if (r1.empty()) fail(ErrorKind::kInvalidInput, "bias_wsum on an empty reservoir");
  detail::require_weight(incoming_wsum, "incoming weight sum");
  if (r1.w_sum > 0.0) r1.w_sum *= survival_probability(r1.w_sum, incoming_wsum);
  return r1;
}

/// Survival bias with the lightness-change factor (1 - |delta_l|), clamped to [0, 1].
template <typename Payload>
Reservoir<Payload> full_bias(Reservoir<Payload> r1, double incoming_wsum, double delta_l) {
  if (!(std::abs(delta_l) <= 1.0)) {
    fail(ErrorKind::kInvalidInput, "delta_l must satisfy |delta_l| <= 1, got " +
                                       std::to_string(delta_l));
  }
  r1 = bias_wsum(std::move(r1), incoming_wsum);
  double trust = 1.0 - std::abs(delta_l);
  trust = trust < 0.0 ? 0.0 : (trust > 1.0 ? 1.0 : trust);
  r1.w_sum *= trust;
  return r1;
}

struct BiasParams {
  double lambda = 0.0;
  std::int64_t j = 0;  // index of the held sample
  std::int64_t i = 0;  // index of the candidate
};

/// Exponential damping w * exp(-lambda * (i - j)).
double memoryless_bias(double w, const BiasParams& p);

/// A-ES key u^(1/w). u == 0 is remapped to the smallest positive double.
double aes_key(RandomDraw u, double w);

/// A-ES reservoir: keeps the largest key seen; no weight sum is stored.
template <typename Payload>
struct KeyedReservoir {
  Payload sample{};
  double key = -1.0;
  std::uint32_t m = 0;

  bool empty() const noexcept { return m == 0; }
};

template <typename Payload>
KeyedReservoir<Payload> aes_update(KeyedReservoir<Payload> res, const Payload& candidate, double w,
                                   RandomDraw u) {
  const double k = aes_key(u, w);
  res.m += 1;
  if (k > res.key) {
    res.sample = candidate;
    res.key = k;
  }
  return res;
}

}  // namespace fovwrs
