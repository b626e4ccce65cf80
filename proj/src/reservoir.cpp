// Copyright 2026 The fovwrs Authors
// SPDX-License-Identifier: Apache-2.0

#include "reservoir.hpp"

#include <limits>

namespace fovwrs {

double survival_probability(double history_wsum, double w_i) {
  detail::require_weight(history_wsum, "history weight sum");
  detail::require_weight(w_i, "candidate weight");
  const double total = history_wsum + w_i;
  if (total == 0.0) fail(ErrorKind::kUndefinedInput, "survival probability of two zero weights");
  return 1.0 - w_i / total;
}

double memoryless_bias(double w, const BiasParams& p) {
  detail::require_weight(w, "weight");
  if (!(p.lambda >= 0.0) || !std::isfinite(p.lambda)) {
    fail(ErrorKind::kInvalidInput, "lambda must be finite and non-negative");
  }
  if (p.j < 0 || p.i < p.j) fail(ErrorKind::kInvalidInput, "bias indices must satisfy i >= j >= 0");
  return w * std::exp(-p.lambda * static_cast<double>(p.i - p.j));
}

double aes_key(RandomDraw u, double w) {
  if (!(w > 0.0) || !std::isfinite(w)) {
    fail(ErrorKind::kInvalidInput, "A-ES weight must be positive, got " + std::to_string(w));
  }
  const double base = u.value() > 0.0 ? u.value() : std::numeric_limits<double>::denorm_min();
  return std::pow(base, 1.0 / w);
}

}  // namespace fovwrs
