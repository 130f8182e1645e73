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

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace bfdcqo {

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int evals = 0;
};

// Downhill simplex minimizer with a hard cap on objective evaluations
// (standard reflection/expansion/contraction/shrink coefficients). Returns
// the best point ever evaluated, so the reported minimum is monotone in the
// budget. max_evals == 0 evaluates nothing and returns x0 with value +inf
// unless eval_x0 is requested by the caller beforehand.
inline NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                                    std::span<const double> x0, double step, int max_evals) {
  const std::size_t dim = x0.size();
  if (dim == 0) throw std::invalid_argument("empty parameter vector");
  NelderMeadResult best;
  best.x.assign(x0.begin(), x0.end());
  best.value = std::numeric_limits<double>::infinity();
  int evals = 0;
  auto eval = [&](const std::vector<double>& x) {
    const double v = f(x);
    ++evals;
    if (v < best.value) {
      best.value = v;
      best.x = x;
    }
    return v;
  };
  if (max_evals <= 0) {
    best.evals = 0;
    return best;
  }

  std::vector<std::vector<double>> simplex(dim + 1, std::vector<double>(x0.begin(), x0.end()));
  std::vector<double> value(dim + 1);
  for (std::size_t i = 1; i <= dim; ++i) simplex[i][i - 1] += step;
  for (std::size_t i = 0; i <= dim && evals < max_evals; ++i) value[i] = eval(simplex[i]);

  const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;
  while (evals < max_evals) {
    std::vector<std::size_t> order(dim + 1);
    for (std::size_t i = 0; i <= dim; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return value[a] < value[b]; });
    const std::size_t lo = order[0], hi = order[dim], second_hi = order[dim - 1];
    if (std::abs(value[hi] - value[lo]) < 1e-12 * (1.0 + std::abs(value[lo]))) break;

    std::vector<double> centroid(dim, 0.0);
    for (std::size_t i = 0; i <= dim; ++i) {
      if (i == hi) continue;
      for (std::size_t d = 0; d < dim; ++d) centroid[d] += simplex[i][d];
    }
    for (double& c : centroid) c /= static_cast<double>(dim);

    auto blend = [&](double coeff) {
      std::vector<double> x(dim);
      for (std::size_t d = 0; d < dim; ++d)
        x[d] = centroid[d] + coeff * (simplex[hi][d] - centroid[d]);
      return x;
    };

    const std::vector<double> reflected = blend(-alpha);
    const double fr = eval(reflected);
    if (fr < value[lo] && evals < max_evals) {
      const std::vector<double> expanded = blend(-gamma);
      const double fe = eval(expanded);
      if (fe < fr) {
        simplex[hi] = expanded;
        value[hi] = fe;
      } else {
        simplex[hi] = reflected;
        value[hi] = fr;
      }
    } else if (fr < value[second_hi]) {
      simplex[hi] = reflected;
      value[hi] = fr;
    } else if (evals < max_evals) {
      const std::vector<double> contracted = blend(rho);
      const double fc = eval(contracted);
      if (fc < value[hi]) {
        simplex[hi] = contracted;
        value[hi] = fc;
      } else {
        for (std::size_t i = 0; i <= dim && evals < max_evals; ++i) {
          if (i == lo) continue;
          for (std::size_t d = 0; d < dim; ++d)
            simplex[i][d] = simplex[lo][d] + sigma * (simplex[i][d] - simplex[lo][d]);
          value[i] = eval(simplex[i]);
        }
      }
    }
  }
  best.evals = evals;
  return best;
}

}  // namespace bfdcqo
