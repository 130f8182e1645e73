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
#include <numbers>
#include <span>
#include <stdexcept>

#include "bfdcqo/instances.hpp"

namespace bfdcqo {

// Annealing schedule lambda(t) = sin^2[(pi/2) sin^2(pi t / 2T)] on [0, T].
struct Schedule {
  double total_time = 1.0;
};

namespace detail {

// Accepts rounding spill from accumulated k*dt grids (3 * 0.1 > 0.3 in
// binary); anything beyond that is a real domain violation.
inline double clamp_to_schedule(double t, const Schedule& sched) {
  if (!(sched.total_time > 0.0)) throw std::invalid_argument("schedule time must be positive");
  const double slack = 1e-9 * sched.total_time;
  if (!(t >= -slack && t <= sched.total_time + slack))
    throw std::invalid_argument("schedule evaluated outside [0, T]");
  return std::clamp(t, 0.0, sched.total_time);
}

}  // namespace detail

inline double lambda_at(double t, const Schedule& sched) {
  t = detail::clamp_to_schedule(t, sched);
  const double inner = std::sin(std::numbers::pi * t / (2.0 * sched.total_time));
  const double s = std::sin(std::numbers::pi / 2.0 * inner * inner);
  return s * s;
}

// d lambda / dt; vanishes at both endpoints. Chain rule gives the prefactor
// pi^2 / T (2 sin cos from the outer square times pi^2/(2T) from the inner
// argument); pinned against a central-difference oracle in the tests.
inline double lambda_dot_at(double t, const Schedule& sched) {
  t = detail::clamp_to_schedule(t, sched);
  const double pi = std::numbers::pi;
  const double T = sched.total_time;
  const double u = pi * t / (2.0 * T);
  const double inner = pi / 2.0 * std::sin(u) * std::sin(u);
  return (pi * pi / T) * std::sin(inner) * std::cos(inner) * std::sin(u) * std::cos(u);
}

// Closed-form coefficients of the first-order CD strength
//   alpha1(lambda) = -A / (B (1-lambda)^2 + C lambda (1-lambda) + D lambda^2),
// for  H_ad(lambda) = (1-lambda) sum_i [hx_i X_i - hb_i Z_i]
//                     + lambda [sum_i h_i Z_i + sum_{i<j} J_ij Z_i Z_j].
// A, B and D are sums of squares (nonnegative); C carries the cross terms
// linear in hb. All four are validated against the dense nested-commutator
// oracle (gamma_oracle.hpp), which is the arbiter for sign and sum
// conventions here. In particular the hb cross terms enter C with a minus
// sign, which is what the  -hb_i Z_i  form of the initial Hamiltonian gives.
struct CDPolynomial {
  double A = 0.0;
  double B = 0.0;
  double C = 0.0;
  double D = 0.0;
};

inline CDPolynomial cd_polynomial(const SpinGlassInstance& inst, std::span<const double> hx,
                                  std::span<const double> hb) {
  const int n = inst.n();
  if (static_cast<int>(hx.size()) != n || static_cast<int>(hb.size()) != n)
    throw std::invalid_argument("field vector length does not match spin count");
  const std::vector<double>& h = inst.fields();
  CDPolynomial p;
  for (int i = 0; i < n; ++i) {
    const double x2 = hx[i] * hx[i];
    const double z2 = h[static_cast<std::size_t>(i)] * h[static_cast<std::size_t>(i)];
    const double b2 = hb[i] * hb[i];
    p.A += 4.0 * x2 * z2;
    p.B += 16.0 * x2 * x2 * z2 + 16.0 * b2 * x2 * z2;
    p.C -= 32.0 * hb[i] * x2 * z2 * h[static_cast<std::size_t>(i)];
    p.D += 16.0 * z2 * z2 * x2;
  }
  // Pairwise sums below run over ordered pairs (i,j) and (j,i); each stored
  // coupling contributes both orientations.
  std::vector<double> j2_sum(static_cast<std::size_t>(n), 0.0);  // sum_j J_ij^2 per site
  std::vector<double> j4_sum(static_cast<std::size_t>(n), 0.0);  // sum_j J_ij^4 per site
  for (const Coupling& c : inst.couplings()) {
    const double j2 = c.value * c.value;
    j2_sum[static_cast<std::size_t>(c.i)] += j2;
    j2_sum[static_cast<std::size_t>(c.j)] += j2;
    j4_sum[static_cast<std::size_t>(c.i)] += j2 * j2;
    j4_sum[static_cast<std::size_t>(c.j)] += j2 * j2;
    for (auto [a, b] : {std::pair(c.i, c.j), std::pair(c.j, c.i)}) {
      const double xa2 = hx[a] * hx[a];
      const double xb2 = hx[b] * hx[b];
      const double za = h[static_cast<std::size_t>(a)];
      p.A += 4.0 * xa2 * j2;
      p.B += 48.0 * xa2 * xb2 * j2 + 16.0 * xa2 * xa2 * j2 + 16.0 * j2 * xa2 * hb[a] * hb[a];
      p.C -= 96.0 * hb[a] * za * xa2 * j2;
      p.D += 96.0 * xa2 * za * za * j2 + 16.0 * j2 * j2 * xa2;
    }
  }
  // Three-site chains J_ij J_ik around a common center i.
  for (int i = 0; i < n; ++i) {
    const double s = j2_sum[static_cast<std::size_t>(i)];
    p.D += 48.0 * hx[i] * hx[i] * (s * s - j4_sum[static_cast<std::size_t>(i)]);
  }
  return p;
}

inline double alpha1(const CDPolynomial& poly, double lam) {
  const double denom =
      poly.B * (1.0 - lam) * (1.0 - lam) + poly.C * lam * (1.0 - lam) + poly.D * lam * lam;
  if (!(denom > 0.0))
    throw std::domain_error("degenerate CD denominator: instance has no dynamics to correct");
  return -poly.A / denom;
}

}  // namespace bfdcqo
