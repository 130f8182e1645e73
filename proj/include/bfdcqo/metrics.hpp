// Copyright 2025-2026 The bfdcqo developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>

namespace bfdcqo {

// Time to solution, in shot units: the shot budget needed to observe the
// ground state at least once with 99% confidence,
//   TTS = n_iter * n_shots * log(1 - 0.99) / log(1 - p_gs).
// p_gs = 0 gives +inf, p_gs = 1 gives 0; p_gs >= 0.99 yields a log factor
// <= 1. Wall time per shot is deliberately not modeled.
inline double tts(double p_gs, int n_iter, std::uint64_t n_shots) {
  if (!(p_gs >= 0.0 && p_gs <= 1.0)) throw std::invalid_argument("p_gs must lie in [0, 1]");
  if (p_gs == 0.0) return std::numeric_limits<double>::infinity();
  if (p_gs == 1.0) return 0.0;
  const double budget = static_cast<double>(n_iter) * static_cast<double>(n_shots);
  return budget * std::log(1.0 - 0.99) / std::log(1.0 - p_gs);
}

inline double approximation_ratio(double obtained, double ground) {
  if (ground == 0.0) throw std::invalid_argument("approximation ratio undefined for zero ground energy");
  return obtained / ground;
}

// a/b, or empty when the denominator vanishes (reports print a sentinel).
inline std::optional<double> enhancement_ratio(double metric_a, double metric_b) {
  if (metric_b == 0.0) return std::nullopt;
  return metric_a / metric_b;
}

struct ScalingFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

// Least-squares line through (n, ln p_gs); points with p_gs <= 0 are skipped.
inline ScalingFit fit_scaling(std::span<const std::pair<double, double>> points) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
  int m = 0;
  for (auto [n, p] : points) {
    if (!(p > 0.0)) continue;
    const double y = std::log(p);
    sx += n;
    sy += y;
    sxx += n * n;
    sxy += n * y;
    syy += y * y;
    ++m;
  }
  if (m < 2) throw std::invalid_argument("scaling fit needs at least two positive points");
  const double denom = m * sxx - sx * sx;
  if (denom == 0.0) throw std::invalid_argument("scaling fit needs distinct sizes");
  ScalingFit fit;
  fit.slope = (m * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / m;
  const double ss_tot = syy - sy * sy / m;
  double ss_res = 0.0;
  for (auto [n, p] : points) {
    if (!(p > 0.0)) continue;
    const double r = std::log(p) - (fit.slope * n + fit.intercept);
    ss_res += r * r;
  }
  fit.r_squared = ss_tot == 0.0 ? 1.0 : 1.0 - ss_res / ss_tot;
  return fit;
}

}  // namespace bfdcqo
