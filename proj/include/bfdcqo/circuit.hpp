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

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace bfdcqo {

// Gate vocabulary. RX/RY/RZ/RZZ/RYZ/RZY are Pauli rotations with the
// convention  R_P(theta) = exp(-i theta/2 P); for two-qubit words the first
// listed qubit is the left tensor factor. GPI/GPI2/ZZ are the trapped-ion
// native gates; ZZ(theta) coincides with RZZ(theta).
enum class GateKind { RY, RX, RZ, RZZ, RYZ, RZY, GPI, GPI2, ZZ };

inline int gate_arity(GateKind kind) {
  switch (kind) {
    case GateKind::RY:
    case GateKind::RX:
    case GateKind::RZ:
    case GateKind::GPI:
    case GateKind::GPI2:
      return 1;
    default:
      return 2;
  }
}

inline bool is_rotation(GateKind kind) { return kind != GateKind::GPI && kind != GateKind::GPI2; }

inline const char* gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::RY: return "RY";
    case GateKind::RX: return "RX";
    case GateKind::RZ: return "RZ";
    case GateKind::RZZ: return "RZZ";
    case GateKind::RYZ: return "RYZ";
    case GateKind::RZY: return "RZY";
    case GateKind::GPI: return "GPI";
    case GateKind::GPI2: return "GPI2";
    case GateKind::ZZ: return "ZZ";
  }
  return "?";
}

inline GateKind gate_kind_from_name(const std::string& name) {
  for (GateKind k : {GateKind::RY, GateKind::RX, GateKind::RZ, GateKind::RZZ, GateKind::RYZ,
                     GateKind::RZY, GateKind::GPI, GateKind::GPI2, GateKind::ZZ}) {
    if (name == gate_name(k)) return k;
  }
  throw std::invalid_argument("unknown gate kind: " + name);
}

struct Gate {
  GateKind kind;
  std::array<int, 2> qubits{0, 0};
  double angle = 0.0;

  static Gate one(GateKind kind, int q, double angle) {
    if (gate_arity(kind) != 1) throw std::invalid_argument("gate is not single-qubit");
    return Gate{kind, {q, -1}, angle};
  }
  static Gate two(GateKind kind, int q0, int q1, double angle) {
    if (gate_arity(kind) != 2) throw std::invalid_argument("gate is not two-qubit");
    return Gate{kind, {q0, q1}, angle};
  }
  int arity() const { return gate_arity(kind); }
};

// Ordered gate list; the leftmost gate acts first on the state. An optional
// layer annotation (from layer_nearest_neighbor) parallels the gate list.
class Circuit {
 public:
  explicit Circuit(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1) throw std::invalid_argument("circuit width must be positive");
  }

  int n_qubits() const { return n_qubits_; }
  const std::vector<Gate>& gates() const { return gates_; }
  const std::vector<int>& layers() const { return layers_; }
  bool has_layers() const { return !layers_.empty(); }

  void push(const Gate& g) {
    if (!std::isfinite(g.angle)) throw std::invalid_argument("non-finite gate angle");
    for (int k = 0; k < g.arity(); ++k) {
      if (g.qubits[static_cast<std::size_t>(k)] < 0 ||
          g.qubits[static_cast<std::size_t>(k)] >= n_qubits_)
        throw std::invalid_argument("gate qubit index out of range");
    }
    if (g.arity() == 2 && g.qubits[0] == g.qubits[1])
      throw std::invalid_argument("two-qubit gate needs distinct qubits");
    gates_.push_back(g);
  }

  void push_annotated(const Gate& g, int layer) {
    push(g);
    layers_.push_back(layer);
  }

  void append(const Circuit& other) {
    if (other.n_qubits_ != n_qubits_) throw std::invalid_argument("circuit width mismatch");
    for (const Gate& g : other.gates_) push(g);
  }

 private:
  int n_qubits_;
  std::vector<Gate> gates_;
  std::vector<int> layers_;
};

// Exact unitary of a single gate (2x2 or 4x4, first qubit = left factor).
inline Eigen::MatrixXcd unitary_of(const Gate& g) {
  using namespace std::complex_literals;
  const double half = g.angle / 2.0;
  const double c = std::cos(half);
  const double s = std::sin(half);
  switch (g.kind) {
    case GateKind::RY: {
      Eigen::Matrix2cd u;
      u << c, -s, s, c;
      return u;
    }
    case GateKind::RX: {
      Eigen::Matrix2cd u;
      u << c, -1i * s, -1i * s, c;
      return u;
    }
    case GateKind::RZ: {
      Eigen::Matrix2cd u;
      u << std::exp(-1i * half), 0, 0, std::exp(1i * half);
      return u;
    }
    case GateKind::GPI: {
      Eigen::Matrix2cd u;
      u << 0, std::exp(-1i * g.angle), std::exp(1i * g.angle), 0;
      return u;
    }
    case GateKind::GPI2: {
      Eigen::Matrix2cd u;
      u << 1, -1i * std::exp(-1i * g.angle), -1i * std::exp(1i * g.angle), 1;
      return u / std::sqrt(2.0);
    }
    case GateKind::RZZ:
    case GateKind::ZZ: {
      Eigen::Matrix4cd u = Eigen::Matrix4cd::Zero();
      const std::complex<double> minus = std::exp(-1i * half);
      const std::complex<double> plus = std::exp(1i * half);
      u(0, 0) = minus;
      u(1, 1) = plus;
      u(2, 2) = plus;
      u(3, 3) = minus;
      return u;
    }
    case GateKind::RYZ: {
      // exp(-i theta/2 Y (x) Z)
      Eigen::Matrix4cd u = Eigen::Matrix4cd::Zero();
      u(0, 0) = c; u(1, 1) = c; u(2, 2) = c; u(3, 3) = c;
      u(0, 2) = -s; u(1, 3) = s; u(2, 0) = s; u(3, 1) = -s;
      return u;
    }
    case GateKind::RZY: {
      // exp(-i theta/2 Z (x) Y)
      Eigen::Matrix4cd u = Eigen::Matrix4cd::Zero();
      u(0, 0) = c; u(1, 1) = c; u(2, 2) = c; u(3, 3) = c;
      u(0, 1) = -s; u(1, 0) = s; u(2, 3) = s; u(3, 2) = -s;
      return u;
    }
  }
  throw std::logic_error("unreachable gate kind");
}

enum class NativeTarget { generic, ionq };

// Rewrites a {RY, RX, RZZ, RYZ, RZY} circuit into the target's gate set.
// Decomposition sequences are emitted in execution order; products agree with
// the source gate up to global phase.
//   generic: RYZ/RZY become RX(pi/2)-conjugated RZZ on the Y-carrying qubit.
//   ionq:    RY -> GPI2(pi), GPI(theta/2), GPI2(pi); RYZ/RZY -> GPI2(0)/ZZ/
//            GPI2(pi); RZZ -> ZZ.
inline Circuit decompose_native(const Circuit& c, NativeTarget target) {
  constexpr double half_pi = std::numbers::pi / 2.0;
  Circuit out(c.n_qubits());
  for (const Gate& g : c.gates()) {
    switch (g.kind) {
      case GateKind::RY:
        if (target == NativeTarget::ionq) {
          out.push(Gate::one(GateKind::GPI2, g.qubits[0], std::numbers::pi));
          out.push(Gate::one(GateKind::GPI, g.qubits[0], g.angle / 2.0));
          out.push(Gate::one(GateKind::GPI2, g.qubits[0], std::numbers::pi));
        } else {
          out.push(g);
        }
        break;
      case GateKind::RYZ:
      case GateKind::RZY: {
        const int y_qubit = g.kind == GateKind::RYZ ? g.qubits[0] : g.qubits[1];
        if (target == NativeTarget::ionq) {
          out.push(Gate::one(GateKind::GPI2, y_qubit, 0.0));
          out.push(Gate::two(GateKind::ZZ, g.qubits[0], g.qubits[1], g.angle));
          out.push(Gate::one(GateKind::GPI2, y_qubit, std::numbers::pi));
        } else {
          out.push(Gate::one(GateKind::RX, y_qubit, half_pi));
          out.push(Gate::two(GateKind::RZZ, g.qubits[0], g.qubits[1], g.angle));
          out.push(Gate::one(GateKind::RX, y_qubit, -half_pi));
        }
        break;
      }
      case GateKind::RZZ:
        if (target == NativeTarget::ionq) {
          out.push(Gate::two(GateKind::ZZ, g.qubits[0], g.qubits[1], g.angle));
        } else {
          out.push(g);
        }
        break;
      case GateKind::RX:
        if (target == NativeTarget::ionq)
          throw std::invalid_argument("no IonQ native decomposition for RX");
        out.push(g);
        break;
      default:
        throw std::invalid_argument(std::string("unsupported gate kind for target: ") +
                                    gate_name(g.kind));
    }
  }
  return out;
}

// Drops rotation gates with |angle| < theta_cutoff. GPI/GPI2 are never
// dropped (zero angle is not the identity for them).
inline Circuit prune(const Circuit& c, double theta_cutoff) {
  if (theta_cutoff < 0.0) throw std::invalid_argument("cutoff must be nonnegative");
  Circuit out(c.n_qubits());
  for (const Gate& g : c.gates()) {
    if (is_rotation(g.kind) && std::abs(g.angle) < theta_cutoff) continue;
    out.push(g);
  }
  return out;
}

namespace detail {

inline std::array<char, 2> pauli_word(GateKind kind) {
  switch (kind) {
    case GateKind::RX: return {'X', ' '};
    case GateKind::RY: return {'Y', ' '};
    case GateKind::RZ: return {'Z', ' '};
    case GateKind::RZZ:
    case GateKind::ZZ: return {'Z', 'Z'};
    case GateKind::RYZ: return {'Y', 'Z'};
    case GateKind::RZY: return {'Z', 'Y'};
    default: return {'?', '?'};  // not a Pauli rotation
  }
}

inline char pauli_on(const Gate& g, int qubit) {
  const auto word = pauli_word(g.kind);
  for (int k = 0; k < g.arity(); ++k)
    if (g.qubits[static_cast<std::size_t>(k)] == qubit) return word[static_cast<std::size_t>(k)];
  return ' ';
}

// True when the gates' unitaries commute for all angles: disjoint supports,
// or Pauli rotation words that anticommute on an even number of shared sites.
inline bool gates_commute(const Gate& a, const Gate& b) {
  int shared = 0;
  int anti = 0;
  for (int k = 0; k < a.arity(); ++k) {
    const int q = a.qubits[static_cast<std::size_t>(k)];
    const char pb = pauli_on(b, q);
    if (pb == ' ') continue;
    ++shared;
    const char pa = pauli_on(a, q);
    if (pa == '?' || pb == '?') return false;
    if (pa != pb) ++anti;
  }
  if (shared == 0) return true;
  return anti % 2 == 0;
}

}  // namespace detail

// Assigns each gate the earliest layer compatible with (a) one gate per qubit
// per layer and (b) the original relative order of every non-commuting pair.
// Commuting gates may be hoisted past each other, which is what groups
// nearest-neighbor entangling gates into alternating even-pair / odd-pair
// layers. Gates in the returned circuit are stably reordered by layer.
inline Circuit layer_nearest_neighbor(const Circuit& c) {
  for (const Gate& g : c.gates()) {
    if (g.arity() == 2 && std::abs(g.qubits[0] - g.qubits[1]) != 1)
      throw std::invalid_argument("two-qubit gate does not act on a chain pair");
  }
  const std::size_t count = c.gates().size();
  std::vector<int> layer(count, 0);
  std::vector<std::vector<std::size_t>> on_qubit(static_cast<std::size_t>(c.n_qubits()));
  std::vector<std::vector<bool>> occupied;  // [layer][qubit]
  for (std::size_t idx = 0; idx < count; ++idx) {
    const Gate& g = c.gates()[idx];
    int lower = 0;
    for (int k = 0; k < g.arity(); ++k) {
      for (std::size_t prev : on_qubit[static_cast<std::size_t>(g.qubits[static_cast<std::size_t>(k)])]) {
        if (!detail::gates_commute(c.gates()[prev], g)) lower = std::max(lower, layer[prev] + 1);
      }
    }
    int chosen = -1;
    for (int l = lower; l < static_cast<int>(occupied.size()); ++l) {
      bool free = true;
      for (int k = 0; k < g.arity(); ++k)
        free = free && !occupied[static_cast<std::size_t>(l)]
                                [static_cast<std::size_t>(g.qubits[static_cast<std::size_t>(k)])];
      if (free) {
        chosen = l;
        break;
      }
    }
    if (chosen < 0) {
      occupied.emplace_back(static_cast<std::size_t>(c.n_qubits()), false);
      chosen = static_cast<int>(occupied.size()) - 1;
    }
    layer[idx] = chosen;
    for (int k = 0; k < g.arity(); ++k) {
      occupied[static_cast<std::size_t>(chosen)]
              [static_cast<std::size_t>(g.qubits[static_cast<std::size_t>(k)])] = true;
      on_qubit[static_cast<std::size_t>(g.qubits[static_cast<std::size_t>(k)])].push_back(idx);
    }
  }
  Circuit out(c.n_qubits());
  for (int l = 0; l < static_cast<int>(occupied.size()); ++l) {
    for (std::size_t idx = 0; idx < count; ++idx)
      if (layer[idx] == l) out.push_annotated(c.gates()[idx], l);
  }
  return out;
}

struct GateStats {
  int one_qubit = 0;
  int two_qubit = 0;
  int depth = 0;  // greedy as-soon-as-possible layering
};

inline GateStats gate_stats(const Circuit& c) {
  GateStats stats;
  std::vector<int> busy(static_cast<std::size_t>(c.n_qubits()), 0);
  for (const Gate& g : c.gates()) {
    (g.arity() == 1 ? stats.one_qubit : stats.two_qubit) += 1;
    int level = 0;
    for (int k = 0; k < g.arity(); ++k)
      level = std::max(level, busy[static_cast<std::size_t>(g.qubits[static_cast<std::size_t>(k)])]);
    for (int k = 0; k < g.arity(); ++k)
      busy[static_cast<std::size_t>(g.qubits[static_cast<std::size_t>(k)])] = level + 1;
    stats.depth = std::max(stats.depth, level + 1);
  }
  return stats;
}

}  // namespace bfdcqo
