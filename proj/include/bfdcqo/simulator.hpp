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
#include <complex>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "bfdcqo/circuit.hpp"
#include "bfdcqo/instances.hpp"
#include "bfdcqo/rng.hpp"

namespace bfdcqo {

// 2^n complex amplitudes. Index bit layout matches bitstring_of_index:
// qubit 0 occupies the most significant bit.
class Statevector {
 public:
  explicit Statevector(int n_qubits)
      : n_qubits_(n_qubits), amps_(std::size_t{1} << n_qubits, {0.0, 0.0}) {
    if (n_qubits < 1) throw std::invalid_argument("state width must be positive");
    amps_[0] = {1.0, 0.0};
  }

  int n_qubits() const { return n_qubits_; }
  const std::vector<std::complex<double>>& amplitudes() const { return amps_; }

  double norm_squared() const {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return s;
  }

  void apply(const Gate& g) {
    if (g.kind == GateKind::RZ) {
      apply_phase_1q(g.qubits[0], g.angle);
    } else if (g.kind == GateKind::RZZ || g.kind == GateKind::ZZ) {
      apply_phase_2q(g.qubits[0], g.qubits[1], g.angle);
    } else if (g.arity() == 1) {
      const Eigen::MatrixXcd u = unitary_of(g);
      apply_dense_1q(g.qubits[0], u);
    } else {
      const Eigen::MatrixXcd u = unitary_of(g);
      apply_dense_2q(g.qubits[0], g.qubits[1], u);
    }
  }

 private:
  std::uint64_t mask_of(int qubit) const { return 1ULL << (n_qubits_ - 1 - qubit); }

  void apply_phase_1q(int q, double angle) {
    using namespace std::complex_literals;
    const std::complex<double> minus = std::exp(-1i * (angle / 2.0));
    const std::complex<double> plus = std::exp(1i * (angle / 2.0));
    const std::uint64_t m = mask_of(q);
    for (std::uint64_t z = 0; z < amps_.size(); ++z) amps_[z] *= (z & m) ? plus : minus;
  }

  void apply_phase_2q(int qa, int qb, double angle) {
    using namespace std::complex_literals;
    const std::complex<double> equal = std::exp(-1i * (angle / 2.0));
    const std::complex<double> differ = std::exp(1i * (angle / 2.0));
    const std::uint64_t ma = mask_of(qa);
    const std::uint64_t mb = mask_of(qb);
    for (std::uint64_t z = 0; z < amps_.size(); ++z)
      amps_[z] *= (static_cast<bool>(z & ma) == static_cast<bool>(z & mb)) ? equal : differ;
  }

  void apply_dense_1q(int q, const Eigen::MatrixXcd& u) {
    const std::uint64_t m = mask_of(q);
    for (std::uint64_t base = 0; base < amps_.size(); base += 2 * m) {
      for (std::uint64_t off = 0; off < m; ++off) {
        const std::uint64_t i0 = base + off;
        const std::uint64_t i1 = i0 + m;
        const std::complex<double> a0 = amps_[i0];
        const std::complex<double> a1 = amps_[i1];
        amps_[i0] = u(0, 0) * a0 + u(0, 1) * a1;
        amps_[i1] = u(1, 0) * a0 + u(1, 1) * a1;
      }
    }
  }

  void apply_dense_2q(int qa, int qb, const Eigen::MatrixXcd& u) {
    const std::uint64_t ma = mask_of(qa);
    const std::uint64_t mb = mask_of(qb);
    for (std::uint64_t z = 0; z < amps_.size(); ++z) {
      if (z & (ma | mb)) continue;
      const std::uint64_t idx[4] = {z, z | mb, z | ma, z | ma | mb};
      std::complex<double> v[4];
      for (int k = 0; k < 4; ++k) v[k] = amps_[idx[k]];
      for (int r = 0; r < 4; ++r) {
        std::complex<double> acc = 0.0;
        for (int col = 0; col < 4; ++col) acc += u(r, col) * v[col];
        amps_[idx[r]] = acc;
      }
    }
  }

  int n_qubits_;
  std::vector<std::complex<double>> amps_;
};

// Applies the circuit to |0...0>. The width budget guards against accidental
// huge allocations (default 26 qubits, about 1 GiB of amplitudes).
inline Statevector run_circuit(const Circuit& c, int max_qubits = 26) {
  if (c.n_qubits() > max_qubits)
    throw std::invalid_argument("circuit width " + std::to_string(c.n_qubits()) +
                                " exceeds simulation budget of " + std::to_string(max_qubits));
  Statevector sv(c.n_qubits());
  for (const Gate& g : c.gates()) sv.apply(g);
  return sv;
}

struct SampleSet {
  std::map<std::string, std::uint64_t> counts;
  std::uint64_t n_shots = 0;
  std::uint64_t seed = 0;
};

// Inverse-CDF sampling over the exact distribution; deterministic given seed.
inline SampleSet sample(const Statevector& sv, std::uint64_t n_shots, std::uint64_t seed) {
  if (n_shots == 0) throw std::invalid_argument("need at least one shot");
  const auto& amps = sv.amplitudes();
  std::vector<double> cumulative(amps.size());
  double acc = 0.0;
  for (std::size_t z = 0; z < amps.size(); ++z) {
    acc += std::norm(amps[z]);
    cumulative[z] = acc;
  }
  RandomSource rng(seed);
  SampleSet out;
  out.n_shots = n_shots;
  out.seed = seed;
  for (std::uint64_t shot = 0; shot < n_shots; ++shot) {
    const double r = rng.uniform() * acc;
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), r);
    const std::uint64_t z = static_cast<std::uint64_t>(it - cumulative.begin());
    out.counts[bitstring_of_index(std::min<std::uint64_t>(z, amps.size() - 1), sv.n_qubits())] += 1;
  }
  return out;
}

inline std::vector<double> expectation_z(const Statevector& sv) {
  const int n = sv.n_qubits();
  std::vector<double> expect(static_cast<std::size_t>(n), 0.0);
  const auto& amps = sv.amplitudes();
  for (std::uint64_t z = 0; z < amps.size(); ++z) {
    const double p = std::norm(amps[z]);
    if (p == 0.0) continue;
    for (int i = 0; i < n; ++i)
      expect[static_cast<std::size_t>(i)] += ((z >> (n - 1 - i)) & 1ULL) ? -p : p;
  }
  return expect;
}

inline std::vector<double> expectation_z(const SampleSet& samples) {
  if (samples.counts.empty()) throw std::invalid_argument("empty sample set");
  const std::size_t n = samples.counts.begin()->first.size();
  std::vector<double> sums(n, 0.0);
  for (const auto& [bits, count] : samples.counts) {
    for (std::size_t i = 0; i < n; ++i)
      sums[i] += static_cast<double>(count) * spin_of_bit(bits[i]);
  }
  for (double& v : sums) v /= static_cast<double>(samples.n_shots);
  return sums;
}

// Overlap with the ground manifold: sum of |amplitude|^2 over all degenerate
// ground bitstrings (statevector path) or the fraction of shots hitting any
// of them (sample path).
inline double success_probability(const Statevector& sv, const GroundTruth& gt) {
  double p = 0.0;
  for (const std::string& state : gt.states) {
    if (static_cast<int>(state.size()) != sv.n_qubits())
      throw std::invalid_argument("ground state width mismatch");
    p += std::norm(sv.amplitudes()[index_of_bitstring(state)]);
  }
  return p;
}

inline double success_probability(const SampleSet& samples, const GroundTruth& gt) {
  std::uint64_t hits = 0;
  for (const std::string& state : gt.states) {
    auto it = samples.counts.find(state);
    if (it != samples.counts.end()) hits += it->second;
  }
  return static_cast<double>(hits) / static_cast<double>(samples.n_shots);
}

// Fixed-width histogram over [lo, hi]; the top edge is inclusive. A single
// distinct energy collapses to one bin.
struct EnergyHistogram {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<std::uint64_t> counts;
};

struct EnergyStats {
  double mean = 0.0;
  double min = 0.0;
  EnergyHistogram histogram;
};

inline EnergyStats energy_statistics(const SampleSet& samples, const SpinGlassInstance& inst,
                                     int bins = 32) {
  if (samples.counts.empty()) throw std::invalid_argument("empty sample set");
  if (bins < 1) throw std::invalid_argument("need at least one bin");
  std::vector<std::pair<double, std::uint64_t>> energies;
  energies.reserve(samples.counts.size());
  double mean = 0.0;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& [bits, count] : samples.counts) {
    const double e = energy(inst, bits);
    energies.emplace_back(e, count);
    mean += e * static_cast<double>(count);
    lo = std::min(lo, e);
    hi = std::max(hi, e);
  }
  mean /= static_cast<double>(samples.n_shots);
  EnergyStats stats;
  stats.mean = mean;
  stats.min = lo;
  stats.histogram.lo = lo;
  stats.histogram.hi = hi;
  stats.histogram.counts.assign(static_cast<std::size_t>(lo == hi ? 1 : bins), 0);
  const double width = (hi - lo) / static_cast<double>(stats.histogram.counts.size());
  for (auto [e, count] : energies) {
    std::size_t bin = 0;
    if (width > 0.0)
      bin = std::min(stats.histogram.counts.size() - 1,
                     static_cast<std::size_t>((e - lo) / width));
    stats.histogram.counts[bin] += count;
  }
  return stats;
}

}  // namespace bfdcqo
