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
#include <span>
#include <stdexcept>
#include <vector>

#include "bfdcqo/circuit.hpp"
#include "bfdcqo/instances.hpp"
#include "bfdcqo/schedule_cd.hpp"

namespace bfdcqo {

enum class CdMode { impulse, full, adiabatic };

// Trotterization settings. The time grid is t_k = k*dt for k = 1..n_trot;
// the schedule length T enters only through lambda(t) and its derivative,
// so n_trot*dt must stay within [0, T] but need not reach T. total_time <= 0
// selects the standard product-formula relation T = n_trot*dt, under which
// the steps digitize the whole anneal. An empty hx means the uniform default
// hx_i = -1.
struct BuildConfig {
  double total_time = 0.0;  // <= 0: derive n_trot * dt
  double dt = 0.1;
  int n_trot = 3;
  std::vector<double> hx;
  CdMode cd_mode = CdMode::impulse;
  double theta_cutoff = 0.0;
};

inline double effective_total_time(const BuildConfig& cfg) {
  if (cfg.total_time > 0.0) return cfg.total_time;
  if (!(cfg.dt > 0.0) || cfg.n_trot < 1)
    throw std::invalid_argument("cannot derive schedule length from an invalid time grid");
  return cfg.n_trot * cfg.dt;
}

// Longitudinal bias field, componentwise in [-1, 1] (measured expectation of
// a +-1 observable).
struct BiasField {
  std::vector<double> hb;

  static BiasField zero(int n) { return BiasField{std::vector<double>(static_cast<std::size_t>(n), 0.0)}; }

  void validate() const {
    for (double v : hb)
      if (!(std::abs(v) <= 1.0)) throw std::invalid_argument("bias component outside [-1, 1]");
  }
};

inline std::vector<double> effective_hx(const BuildConfig& cfg, int n) {
  if (cfg.hx.empty()) return std::vector<double>(static_cast<std::size_t>(n), -1.0);
  if (static_cast<int>(cfg.hx.size()) != n)
    throw std::invalid_argument("transverse field length does not match spin count");
  return cfg.hx;
}

// RY angles preparing, per qubit, the ground state of hx_i X - hb_i Z.
// The angle comes straight from the normalized ground eigenvector
// v = (hb + r, -hx) or (hx, hb - r) with r = sqrt(hb^2 + hx^2) (the branch
// avoids cancellation), with the sign fixed so v0 >= 0; then
// theta = 2 atan2(v1, v0), so RY(theta)|0> = (v0, v1).
inline std::vector<double> initial_state_angles(std::span<const double> hx, const BiasField& bias) {
  if (hx.size() != bias.hb.size())
    throw std::invalid_argument("transverse and bias field lengths differ");
  bias.validate();
  std::vector<double> angles(hx.size());
  for (std::size_t i = 0; i < hx.size(); ++i) {
    const double x = hx[i];
    const double b = bias.hb[i];
    if (x == 0.0 && b == 0.0)
      throw std::invalid_argument("degenerate single-qubit Hamiltonian: hx and hb both zero");
    const double r = std::hypot(x, b);
    double v0, v1;
    if (b >= 0.0) {
      v0 = b + r;
      v1 = -x;
    } else {
      v0 = x;
      v1 = b - r;
    }
    if (v0 < 0.0 || (v0 == 0.0 && v1 < 0.0)) {
      v0 = -v0;
      v1 = -v1;
    }
    angles[i] = 2.0 * std::atan2(v1, v0);
  }
  return angles;
}

// Trotterized evolution circuit for  (1-lambda) H_i + lambda H_f + ldot A1:
// an RY preparation layer followed by n_trot steps. Per step, at t_k = k*dt,
// with a1 = alpha1(lambda(t_k)):
//   full:      RX 2dt(1-l)hx_i; RZ 2dt(l h_i - (1-l)hb_i); RZZ 2dt l J_ij;
//              then the CD terms below.
//   impulse:   CD terms only: RY 4dt ldot a1 hx_i h_i, and per coupling
//              RYZ 4dt ldot a1 J_ij hx_i plus RZY 4dt ldot a1 J_ij hx_j.
//   adiabatic: full without the CD terms.
// Gates within a step follow a fixed order (X, Z, ZZ, CD Y, CD YZ/ZY, each by
// index); first-order Trotterization leaves the order free, so one is pinned
// for reproducibility. The cutoff prunes Trotter gates only, never the
// preparation layer.
inline Circuit build_dcqo_circuit(const SpinGlassInstance& inst, const BuildConfig& cfg,
                                  const BiasField& bias) {
  const int n = inst.n();
  if (static_cast<int>(bias.hb.size()) != n)
    throw std::invalid_argument("bias field length does not match spin count");
  if (!(cfg.dt > 0.0)) throw std::invalid_argument("step size must be positive");
  if (cfg.n_trot < 1) throw std::invalid_argument("need at least one Trotter step");
  const std::vector<double> hx = effective_hx(cfg, n);
  const std::vector<double>& h = inst.fields();
  const Schedule sched{effective_total_time(cfg)};

  Circuit circuit(n);
  const std::vector<double> prep = initial_state_angles(hx, bias);
  for (int i = 0; i < n; ++i) circuit.push(Gate::one(GateKind::RY, i, prep[static_cast<std::size_t>(i)]));

  const bool wants_cd = cfg.cd_mode != CdMode::adiabatic;
  CDPolynomial poly;
  if (wants_cd) poly = cd_polynomial(inst, hx, bias.hb);

  Circuit steps(n);
  for (int k = 1; k <= cfg.n_trot; ++k) {
    const double t = k * cfg.dt;
    const double lam = lambda_at(t, sched);
    const double ldot = lambda_dot_at(t, sched);
    const double a1 = !wants_cd ? 0.0 : (poly.A == 0.0 ? 0.0 : alpha1(poly, lam));
    if (cfg.cd_mode != CdMode::impulse) {
      for (int i = 0; i < n; ++i)
        steps.push(Gate::one(GateKind::RX, i, 2.0 * cfg.dt * (1.0 - lam) * hx[static_cast<std::size_t>(i)]));
      for (int i = 0; i < n; ++i)
        steps.push(Gate::one(GateKind::RZ, i,
                             2.0 * cfg.dt *
                                 (lam * h[static_cast<std::size_t>(i)] -
                                  (1.0 - lam) * bias.hb[static_cast<std::size_t>(i)])));
      for (const Coupling& c : inst.couplings())
        steps.push(Gate::two(GateKind::RZZ, c.i, c.j, 2.0 * cfg.dt * lam * c.value));
    }
    if (wants_cd) {
      const double kick = 4.0 * cfg.dt * ldot * a1;
      for (int i = 0; i < n; ++i)
        steps.push(Gate::one(GateKind::RY, i,
                             kick * hx[static_cast<std::size_t>(i)] * h[static_cast<std::size_t>(i)]));
      for (const Coupling& c : inst.couplings()) {
        steps.push(Gate::two(GateKind::RYZ, c.i, c.j, kick * c.value * hx[static_cast<std::size_t>(c.i)]));
        steps.push(Gate::two(GateKind::RZY, c.i, c.j, kick * c.value * hx[static_cast<std::size_t>(c.j)]));
      }
    }
  }
  circuit.append(prune(steps, cfg.theta_cutoff));
  return circuit;
}

// Standard QAOA ansatz: uniform superposition, then p alternations of the
// cost layer exp(-i gamma H_f) and the mixer exp(-i beta sum_i X_i).
inline Circuit build_qaoa_circuit(const SpinGlassInstance& inst, int p,
                                  std::span<const double> gammas, std::span<const double> betas) {
  if (p < 1) throw std::invalid_argument("need at least one QAOA layer");
  if (static_cast<int>(gammas.size()) != p || static_cast<int>(betas.size()) != p)
    throw std::invalid_argument("parameter vectors must have length p");
  const int n = inst.n();
  Circuit circuit(n);
  for (int i = 0; i < n; ++i)
    circuit.push(Gate::one(GateKind::RY, i, std::numbers::pi / 2.0));
  for (int layer = 0; layer < p; ++layer) {
    const double gamma = gammas[static_cast<std::size_t>(layer)];
    const double beta = betas[static_cast<std::size_t>(layer)];
    for (int i = 0; i < n; ++i)
      circuit.push(Gate::one(GateKind::RZ, i, 2.0 * gamma * inst.fields()[static_cast<std::size_t>(i)]));
    for (const Coupling& c : inst.couplings())
      circuit.push(Gate::two(GateKind::RZZ, c.i, c.j, 2.0 * gamma * c.value));
    for (int i = 0; i < n; ++i) circuit.push(Gate::one(GateKind::RX, i, 2.0 * beta));
  }
  return circuit;
}

}  // namespace bfdcqo
