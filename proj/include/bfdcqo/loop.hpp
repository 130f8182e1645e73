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

#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bfdcqo/builder.hpp"
#include "bfdcqo/instances.hpp"
#include "bfdcqo/nelder_mead.hpp"
#include "bfdcqo/rng.hpp"
#include "bfdcqo/simulator.hpp"

namespace bfdcqo {

enum class BiasMode { bias, antibias, none };
enum class BiasSource { exact_expectation, sampled };

// Full runner configuration. initial_bias overrides the zero bias of
// iteration 1; it exists so tests can force the first iteration into a
// chosen basin and exercise the anti-bias recovery path.
struct RunConfig {
  BuildConfig build;
  std::uint64_t n_shots = 1000;
  int n_iter = 10;
  BiasMode bias_mode = BiasMode::bias;
  BiasSource bias_source = BiasSource::sampled;
  std::uint64_t seed = 0;
  int max_qubits = 26;  // simulation width budget
  std::optional<std::vector<double>> initial_bias;
};

// One iteration's outcome. p_gs is the exact ground-manifold overlap of the
// final statevector (requires ground truth); energy fields come from the
// sampled shots; approximation ratios divide them by the ground energy.
struct IterationRecord {
  int index = 0;
  std::vector<double> hb_used;
  SampleSet samples;
  std::optional<double> p_gs;
  double mean_energy = 0.0;
  double min_energy = 0.0;
  std::optional<double> approximation_ratio_mean;
  std::optional<double> approximation_ratio_best;
};

namespace detail {

inline IterationRecord make_record(int index, const std::vector<double>& hb,
                                   const Statevector& sv, SampleSet samples,
                                   const SpinGlassInstance& inst, const GroundTruth* gt) {
  IterationRecord rec;
  rec.index = index;
  rec.hb_used = hb;
  rec.samples = std::move(samples);
  const EnergyStats stats = energy_statistics(rec.samples, inst);
  rec.mean_energy = stats.mean;
  rec.min_energy = stats.min;
  if (gt != nullptr) {
    rec.p_gs = success_probability(sv, *gt);
    if (gt->energy != 0.0) {
      rec.approximation_ratio_mean = rec.mean_energy / gt->energy;
      rec.approximation_ratio_best = rec.min_energy / gt->energy;
    }
  }
  return rec;
}

}  // namespace detail

// The measurement-feedback protocol: iteration 1 runs with hb = 0 (or the
// configured override); afterwards hb becomes +<sigma_z> (bias) or -<sigma_z>
// (anti-bias) of the configured source, and the preparation layer, CD
// polynomial and circuit are rebuilt. bias_mode none never updates hb, which
// makes the iterations independent repetitions of the same circuit.
inline std::vector<IterationRecord> bfdcqo_run(const SpinGlassInstance& inst, const RunConfig& cfg,
                                               const GroundTruth* gt = nullptr) {
  if (cfg.n_iter < 1) throw std::invalid_argument("need at least one iteration");
  const int n = inst.n();
  std::vector<double> hb(static_cast<std::size_t>(n), 0.0);
  if (cfg.initial_bias) {
    if (static_cast<int>(cfg.initial_bias->size()) != n)
      throw std::invalid_argument("initial bias length does not match spin count");
    hb = *cfg.initial_bias;
  }
  std::vector<IterationRecord> records;
  records.reserve(static_cast<std::size_t>(cfg.n_iter));
  for (int k = 1; k <= cfg.n_iter; ++k) {
    const BiasField bias{hb};
    const Circuit circuit = build_dcqo_circuit(inst, cfg.build, bias);
    const Statevector sv = run_circuit(circuit, cfg.max_qubits);
    SampleSet samples = sample(sv, cfg.n_shots, mix_seed(cfg.seed, static_cast<std::uint64_t>(k)));
    records.push_back(detail::make_record(k, hb, sv, std::move(samples), inst, gt));
    if (cfg.bias_mode != BiasMode::none && k < cfg.n_iter) {
      std::vector<double> measured = cfg.bias_source == BiasSource::exact_expectation
                                         ? expectation_z(sv)
                                         : expectation_z(records.back().samples);
      if (cfg.bias_mode == BiasMode::antibias)
        for (double& v : measured) v = -v;
      hb = std::move(measured);
    }
  }
  return records;
}

// Plain DCQO: a single iteration without feedback.
inline IterationRecord dcqo_run(const SpinGlassInstance& inst, const RunConfig& cfg,
                                const GroundTruth* gt = nullptr) {
  RunConfig single = cfg;
  single.n_iter = 1;
  single.bias_mode = BiasMode::none;
  return bfdcqo_run(inst, single, gt)[0];
}

struct QaoaResult {
  IterationRecord record;
  std::vector<double> gammas;
  std::vector<double> betas;
  double best_energy = 0.0;  // exact <H_f> at the optimum
  int evals = 0;
};

// QAOA baseline. Each of n_inits random starts (uniform angles in [0, 2pi))
// is refined by Nelder-Mead on the exact energy, capped at max_evals
// objective evaluations; shots enter only the reported record. The returned
// minimum is the best over every evaluation of every trajectory.
inline QaoaResult qaoa_run(const SpinGlassInstance& inst, int p, int n_inits, int max_evals,
                           std::uint64_t n_shots, std::uint64_t seed,
                           const GroundTruth* gt = nullptr, int max_qubits = 26) {
  if (p < 1) throw std::invalid_argument("need at least one QAOA layer");
  if (n_inits < 1) throw std::invalid_argument("need at least one initialization");
  const int n = inst.n();
  if (n > max_qubits)
    throw std::invalid_argument("instance width " + std::to_string(n) +
                                " exceeds simulation budget of " + std::to_string(max_qubits));
  std::vector<double> energy_table(std::size_t{1} << n);
  for (std::uint64_t z = 0; z < energy_table.size(); ++z)
    energy_table[z] = energy_of_index(inst, z);
  auto objective = [&](std::span<const double> params) {
    const std::span<const double> gammas = params.subspan(0, static_cast<std::size_t>(p));
    const std::span<const double> betas = params.subspan(static_cast<std::size_t>(p));
    const Statevector sv = run_circuit(build_qaoa_circuit(inst, p, gammas, betas), max_qubits);
    double e = 0.0;
    const auto& amps = sv.amplitudes();
    for (std::uint64_t z = 0; z < amps.size(); ++z) e += std::norm(amps[z]) * energy_table[z];
    return e;
  };

  std::vector<double> best_params;
  double best_value = std::numeric_limits<double>::infinity();
  int total_evals = 0;
  for (int init = 0; init < n_inits; ++init) {
    RandomSource rng(mix_seed(seed, 0x51A0 + static_cast<std::uint64_t>(init)));
    std::vector<double> x0(static_cast<std::size_t>(2 * p));
    for (double& v : x0) v = 2.0 * std::numbers::pi * rng.uniform();
    const double v0 = objective(x0);
    ++total_evals;
    if (v0 < best_value) {
      best_value = v0;
      best_params = x0;
    }
    if (max_evals > 0) {
      const NelderMeadResult r = nelder_mead(objective, x0, 0.3, max_evals);
      total_evals += r.evals;
      if (r.value < best_value) {
        best_value = r.value;
        best_params = r.x;
      }
    }
  }

  QaoaResult result;
  result.gammas.assign(best_params.begin(), best_params.begin() + p);
  result.betas.assign(best_params.begin() + p, best_params.end());
  result.best_energy = best_value;
  result.evals = total_evals;
  const Circuit circuit = build_qaoa_circuit(inst, p, result.gammas, result.betas);
  const Statevector sv = run_circuit(circuit, max_qubits);
  SampleSet samples = sample(sv, n_shots, mix_seed(seed, 0xBE57));
  result.record = detail::make_record(1, std::vector<double>(static_cast<std::size_t>(n), 0.0), sv,
                                      std::move(samples), inst, gt);
  return result;
}

enum class InstanceClass { bias, antibias, none };

inline const char* instance_class_name(InstanceClass c) {
  switch (c) {
    case InstanceClass::bias: return "bias";
    case InstanceClass::antibias: return "antibias";
    case InstanceClass::none: return "none";
  }
  return "?";
}

// Labels an instance by which feedback direction improves on plain DCQO
// (strict inequality; ties count as no improvement). The DCQO reference runs
// without any injected bias; the bias/anti-bias runs honor cfg.initial_bias.
inline InstanceClass classify_instance(const SpinGlassInstance& inst, const RunConfig& cfg,
                                       const GroundTruth& gt) {
  RunConfig reference = cfg;
  reference.initial_bias.reset();
  const IterationRecord base = dcqo_run(inst, reference, &gt);

  RunConfig biased = cfg;
  biased.bias_mode = BiasMode::bias;
  if (bfdcqo_run(inst, biased, &gt).back().p_gs.value() > base.p_gs.value())
    return InstanceClass::bias;

  RunConfig anti = cfg;
  anti.bias_mode = BiasMode::antibias;
  if (bfdcqo_run(inst, anti, &gt).back().p_gs.value() > base.p_gs.value())
    return InstanceClass::antibias;
  return InstanceClass::none;
}

}  // namespace bfdcqo
