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
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bfdcqo/rng.hpp"

namespace bfdcqo {

// Spin/bit convention, fixed project-wide: bit '0' means spin s = +1 and
// bit '1' means spin s = -1 (the eigenvalues of sigma^z on |0> and |1>).
// Basis-state indices place qubit 0 in the most significant bit.
inline int spin_of_bit(char bit) { return bit == '0' ? +1 : -1; }

inline std::string bitstring_of_index(std::uint64_t z, int n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int i = 0; i < n; ++i) {
    if ((z >> (n - 1 - i)) & 1ULL) s[static_cast<std::size_t>(i)] = '1';
  }
  return s;
}

inline std::uint64_t index_of_bitstring(const std::string& s) {
  std::uint64_t z = 0;
  for (char c : s) {
    z <<= 1;
    if (c == '1') z |= 1ULL;
  }
  return z;
}

struct Coupling {
  int i;
  int j;
  double value;
};

// An Ising spin glass  H = sum_{i<j} J_ij s_i s_j + sum_i h_i s_i.
// Couplings are canonicalized to lexicographic (i, j) order on construction,
// so energies never depend on the order couplings were supplied in.
class SpinGlassInstance {
 public:
  SpinGlassInstance(int n, std::vector<double> h, std::vector<Coupling> couplings,
                    std::string topology = "custom", double offset = 0.0)
      : n_(n),
        h_(std::move(h)),
        couplings_(std::move(couplings)),
        topology_(std::move(topology)),
        offset_(offset) {
    if (n_ < 1) throw std::invalid_argument("spin count must be positive");
    if (static_cast<int>(h_.size()) != n_)
      throw std::invalid_argument("field vector length does not match spin count");
    for (double v : h_) {
      if (!std::isfinite(v)) throw std::invalid_argument("non-finite field value");
    }
    std::sort(couplings_.begin(), couplings_.end(),
              [](const Coupling& a, const Coupling& b) {
                return std::pair(a.i, a.j) < std::pair(b.i, b.j);
              });
    for (std::size_t k = 0; k < couplings_.size(); ++k) {
      const Coupling& c = couplings_[k];
      if (c.i < 0 || c.j >= n_ || c.i >= c.j)
        throw std::invalid_argument("coupling pair must satisfy 0 <= i < j < n");
      if (!std::isfinite(c.value)) throw std::invalid_argument("non-finite coupling value");
      if (k > 0 && couplings_[k - 1].i == c.i && couplings_[k - 1].j == c.j)
        throw std::invalid_argument("duplicate coupling pair");
    }
  }

  int n() const { return n_; }
  const std::vector<double>& fields() const { return h_; }
  const std::vector<Coupling>& couplings() const { return couplings_; }
  const std::string& topology() const { return topology_; }
  double offset() const { return offset_; }

 private:
  int n_;
  std::vector<double> h_;
  std::vector<Coupling> couplings_;
  std::string topology_;
  double offset_;
};

struct WMISInstance {
  int vertex_count;
  std::vector<double> weights;
  std::vector<std::pair<int, int>> edges;  // unordered pairs, stored (min,max)
};

inline void validate_wmis(const WMISInstance& w) {
  if (w.vertex_count < 1) throw std::invalid_argument("vertex count must be positive");
  if (static_cast<int>(w.weights.size()) != w.vertex_count)
    throw std::invalid_argument("weight vector length does not match vertex count");
  for (double v : w.weights) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw std::invalid_argument("vertex weights must be positive and finite");
  }
  for (auto [u, v] : w.edges) {
    if (u == v) throw std::invalid_argument("self-loop in WMIS edge set");
    if (u < 0 || v < 0 || u >= w.vertex_count || v >= w.vertex_count)
      throw std::invalid_argument("WMIS edge references invalid vertex");
  }
}

// Minimum classical energy and every bitstring attaining it.
struct GroundTruth {
  double energy;
  std::vector<std::string> states;
};

inline double energy(const SpinGlassInstance& inst, const std::string& z) {
  if (static_cast<int>(z.size()) != inst.n())
    throw std::invalid_argument("bitstring length does not match spin count");
  double e = 0.0;
  for (const Coupling& c : inst.couplings())
    e += c.value * spin_of_bit(z[static_cast<std::size_t>(c.i)]) *
         spin_of_bit(z[static_cast<std::size_t>(c.j)]);
  const std::vector<double>& h = inst.fields();
  for (int i = 0; i < inst.n(); ++i) e += h[static_cast<std::size_t>(i)] * spin_of_bit(z[static_cast<std::size_t>(i)]);
  return e;
}

// Same Hamiltonian evaluated on a basis-state index (qubit 0 = MSB).
inline double energy_of_index(const SpinGlassInstance& inst, std::uint64_t z) {
  const int n = inst.n();
  double e = 0.0;
  auto spin = [&](int q) { return ((z >> (n - 1 - q)) & 1ULL) ? -1.0 : 1.0; };
  for (const Coupling& c : inst.couplings()) e += c.value * spin(c.i) * spin(c.j);
  const std::vector<double>& h = inst.fields();
  for (int i = 0; i < n; ++i) e += h[static_cast<std::size_t>(i)] * spin(i);
  return e;
}

// Edge set of a heavy-hex lattice fragment with n nodes, every degree <= 3.
//
// Construction: horizontal 15-node chains stacked vertically, joined by
// connector nodes at every fourth column, alternating column offsets 0 and 2
// between consecutive row pairs (the standard heavy-hex brick pattern).
// Nodes are numbered in emission order, truncated after n nodes. Connector
// rows and the chain row beneath them are emitted in the same direction
// (left-to-right for offset 0, right-to-left for offset 2) so that every
// prefix of the numbering is a connected subgraph.
inline std::vector<std::pair<int, int>> heavy_hex_edges(int n) {
  if (n < 3) throw std::invalid_argument("heavy-hex fragment needs at least 3 nodes");
  constexpr int kWidth = 15;  // columns per chain row
  std::vector<std::pair<int, int>> edges;
  std::map<std::pair<int, int>, int> id_at;  // (row, col) -> node id; even rows are chains
  int next_id = 0;
  auto emit = [&](int row, int col) {
    if (next_id >= n) return false;
    id_at[{row, col}] = next_id++;
    return true;
  };
  auto pair_offset = [](int pair_index) { return pair_index % 2 == 0 ? 0 : 2; };
  for (int chain = 0; next_id < n; ++chain) {
    const int row = 2 * chain;
    const bool left_to_right = chain == 0 || pair_offset(chain - 1) == 0;
    for (int k = 0; k < kWidth; ++k) {
      const int col = left_to_right ? k : kWidth - 1 - k;
      if (!emit(row, col)) break;
    }
    if (next_id >= n) break;
    const int offset_below = pair_offset(chain);
    if (offset_below == 0) {
      for (int col = 0; col < kWidth; col += 4)
        if (!emit(row + 1, col)) break;
    } else {
      for (int col = kWidth - 1; col >= 0; col -= 4)
        if (!emit(row + 1, col)) break;
    }
  }
  for (const auto& [pos, id] : id_at) {
    auto [row, col] = pos;
    if (row % 2 == 0) {
      auto right = id_at.find({row, col + 1});
      if (right != id_at.end()) edges.emplace_back(std::min(id, right->second), std::max(id, right->second));
    } else {
      for (int chain_row : {row - 1, row + 1}) {
        auto chain_node = id_at.find({chain_row, col});
        if (chain_node != id_at.end())
          edges.emplace_back(std::min(id, chain_node->second), std::max(id, chain_node->second));
      }
    }
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

// Random instance with i.i.d. N(0,1) fields and couplings on the chosen
// topology. Draw order: h_0..h_{n-1}, then J on edges in lexicographic (i,j)
// order. "all-to-all" uses every pair; "heavy-hex" uses heavy_hex_edges(n).
inline SpinGlassInstance random_gaussian_instance(int n, std::uint64_t seed,
                                                  const std::string& topology = "all-to-all") {
  if (n < 1) throw std::invalid_argument("spin count must be positive");
  std::vector<std::pair<int, int>> edges;
  if (topology == "all-to-all") {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  } else if (topology == "heavy-hex") {
    edges = heavy_hex_edges(n);
  } else {
    throw std::invalid_argument("unknown topology: " + topology);
  }
  RandomSource rng(seed);
  std::vector<double> h(static_cast<std::size_t>(n));
  for (double& v : h) v = rng.gaussian();
  std::vector<Coupling> couplings;
  couplings.reserve(edges.size());
  for (auto [i, j] : edges) couplings.push_back({i, j, rng.gaussian()});
  return SpinGlassInstance(n, std::move(h), std::move(couplings), topology);
}

// Random WMIS problem: G(n, p) edges, weights uniform in [w_min, w_max].
// Draw order: all weights in vertex order, then one edge coin per pair in
// lexicographic order.
inline WMISInstance random_wmis_instance(int vertex_count, double edge_probability,
                                         double w_min, double w_max, std::uint64_t seed) {
  if (vertex_count < 1) throw std::invalid_argument("vertex count must be positive");
  if (!(edge_probability >= 0.0 && edge_probability <= 1.0))
    throw std::invalid_argument("edge probability must lie in [0, 1]");
  if (!(w_min > 0.0) || !(w_max >= w_min))
    throw std::invalid_argument("weight range must satisfy 0 < w_min <= w_max");
  RandomSource rng(seed);
  WMISInstance w;
  w.vertex_count = vertex_count;
  w.weights.resize(static_cast<std::size_t>(vertex_count));
  for (double& v : w.weights) v = w_min + (w_max - w_min) * rng.uniform();
  for (int i = 0; i < vertex_count; ++i)
    for (int j = i + 1; j < vertex_count; ++j)
      if (rng.uniform() < edge_probability) w.edges.emplace_back(i, j);
  return w;
}

inline double wmis_default_penalty(const WMISInstance& w) {
  return *std::max_element(w.weights.begin(), w.weights.end()) + 1.0;
}

// Encodes maximum-weight independent set as a spin glass. With selection
// variables x_v = (1 - s_v)/2 (bit '1' = selected) the minimized objective
// -sum_v w_v x_v + penalty * sum_{(u,v) in E} x_u x_v expands to
//   h_v = w_v/2 - penalty*deg(v)/4,  J_uv = penalty/4  on edges,
// plus a constant  penalty*|E|/4 - sum_v w_v/2  stored as the offset, so
// objective = energy + offset. Any penalty above the largest weight makes
// violating an edge unprofitable.
inline SpinGlassInstance wmis_to_ising(const WMISInstance& w, double penalty) {
  validate_wmis(w);
  const double w_max = *std::max_element(w.weights.begin(), w.weights.end());
  if (!(penalty > w_max))
    throw std::invalid_argument("penalty must exceed the maximum vertex weight");
  std::vector<int> degree(static_cast<std::size_t>(w.vertex_count), 0);
  std::vector<Coupling> couplings;
  couplings.reserve(w.edges.size());
  for (auto [u, v] : w.edges) {
    ++degree[static_cast<std::size_t>(u)];
    ++degree[static_cast<std::size_t>(v)];
    couplings.push_back({std::min(u, v), std::max(u, v), penalty / 4.0});
  }
  std::vector<double> h(static_cast<std::size_t>(w.vertex_count));
  double weight_sum = 0.0;
  for (int v = 0; v < w.vertex_count; ++v) {
    h[static_cast<std::size_t>(v)] = w.weights[static_cast<std::size_t>(v)] / 2.0 -
                                     penalty * degree[static_cast<std::size_t>(v)] / 4.0;
    weight_sum += w.weights[static_cast<std::size_t>(v)];
  }
  const double offset = penalty * static_cast<double>(w.edges.size()) / 4.0 - weight_sum / 2.0;
  return SpinGlassInstance(w.vertex_count, std::move(h), std::move(couplings), "custom", offset);
}

// Vertices selected by a bitstring under the WMIS encoding.
inline std::vector<int> decode_independent_set(const std::string& z) {
  std::vector<int> members;
  for (int v = 0; v < static_cast<int>(z.size()); ++v)
    if (z[static_cast<std::size_t>(v)] == '1') members.push_back(v);
  return members;
}

namespace detail {

// Gray-code sweep over all 2^n states with O(deg) incremental energy updates.
// Calls visit(index, incremental_energy) for every state.
template <typename Visit>
void enumerate_energies(const SpinGlassInstance& inst, Visit&& visit) {
  const int n = inst.n();
  const std::uint64_t dim = 1ULL << n;
  std::vector<std::vector<std::pair<int, double>>> adjacent(static_cast<std::size_t>(n));
  for (const Coupling& c : inst.couplings()) {
    adjacent[static_cast<std::size_t>(c.i)].emplace_back(c.j, c.value);
    adjacent[static_cast<std::size_t>(c.j)].emplace_back(c.i, c.value);
  }
  std::vector<double> spin(static_cast<std::size_t>(n), 1.0);
  double e = 0.0;
  for (const Coupling& c : inst.couplings()) e += c.value;
  for (double hv : inst.fields()) e += hv;
  std::uint64_t z = 0;  // state index of the current gray code
  visit(z, e);
  for (std::uint64_t t = 1; t < dim; ++t) {
    const int flipped_bit = std::countr_zero(t);   // position from LSB
    const int q = n - 1 - flipped_bit;             // qubit index (MSB convention)
    double local = inst.fields()[static_cast<std::size_t>(q)];
    for (auto [other, value] : adjacent[static_cast<std::size_t>(q)])
      local += value * spin[static_cast<std::size_t>(other)];
    e -= 2.0 * spin[static_cast<std::size_t>(q)] * local;
    spin[static_cast<std::size_t>(q)] = -spin[static_cast<std::size_t>(q)];
    z ^= 1ULL << flipped_bit;
    visit(z, e);
  }
}

}  // namespace detail

// Exhaustive ground-state search, n <= 26. Returns the minimal energy and all
// minimizers. The sweep uses incremental gray-code updates; candidates within
// a small band of the running minimum are re-evaluated from scratch so that
// exact degeneracies (global flips, symmetric WMIS optima) are kept intact
// despite accumulated rounding in the incremental pass.
inline GroundTruth exact_ground_state(const SpinGlassInstance& inst) {
  constexpr int kMaxQubits = 26;
  if (inst.n() > kMaxQubits)
    throw std::invalid_argument("exhaustive solve limited to 26 spins, got " +
                                std::to_string(inst.n()));
  double min_seen = std::numeric_limits<double>::infinity();
  detail::enumerate_energies(inst, [&](std::uint64_t, double e) {
    if (e < min_seen) min_seen = e;
  });
  double scale = 1.0;
  for (const Coupling& c : inst.couplings()) scale += std::abs(c.value);
  for (double hv : inst.fields()) scale += std::abs(hv);
  // Band wide enough to cover worst-case incremental drift over 2^n updates.
  const double band = (1e-9 + 1e-15 * static_cast<double>(1ULL << inst.n())) * scale;
  std::vector<std::uint64_t> candidates;
  detail::enumerate_energies(inst, [&](std::uint64_t z, double e) {
    if (e <= min_seen + band) candidates.push_back(z);
  });
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t z : candidates) best = std::min(best, energy_of_index(inst, z));
  GroundTruth gt;
  gt.energy = best;
  for (std::uint64_t z : candidates)
    if (energy_of_index(inst, z) == best) gt.states.push_back(bitstring_of_index(z, inst.n()));
  std::sort(gt.states.begin(), gt.states.end());
  return gt;
}

}  // namespace bfdcqo
