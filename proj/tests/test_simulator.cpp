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

#include <catch2/catch_amalgamated.hpp>
#include <random>
#include <sstream>

#include "bfdcqo/io.hpp"
#include "bfdcqo/simulator.hpp"
#include "support/oracles.hpp"

using namespace bfdcqo;

TEST_CASE("running circuits") {
  SECTION("empty circuit keeps |0...0>") {
    const Statevector sv = run_circuit(Circuit(3));
    REQUIRE(sv.amplitudes()[0] == std::complex<double>(1.0, 0.0));
    REQUIRE_THAT(sv.norm_squared(), Catch::Matchers::WithinAbs(1.0, 1e-15));
  }
  SECTION("RY(pi/2) gives the uniform real pair") {
    Circuit c(1);
    c.push(Gate::one(GateKind::RY, 0, std::numbers::pi / 2));
    const Statevector sv = run_circuit(c);
    REQUIRE_THAT(sv.amplitudes()[0].real(), Catch::Matchers::WithinAbs(1 / std::sqrt(2.0), 1e-15));
    REQUIRE_THAT(sv.amplitudes()[1].real(), Catch::Matchers::WithinAbs(1 / std::sqrt(2.0), 1e-15));
  }
  SECTION("bit-order canary: RY(pi) on qubit 0 of 2 lands on index 2") {
    Circuit c(2);
    c.push(Gate::one(GateKind::RY, 0, std::numbers::pi));
    const Statevector sv = run_circuit(c);
    REQUIRE_THAT(std::norm(sv.amplitudes()[2]), Catch::Matchers::WithinAbs(1.0, 1e-15));
  }
  SECTION("two-qubit word orientation: RYZ rotates the first listed qubit") {
    // exp(-i t/2 Y(x)Z)|00> = cos(t/2)|00> + sin(t/2)|10>, and the mirrored
    // word moves amplitude to |01> instead.
    const double theta = 0.6;
    Circuit a(2);
    a.push(Gate::two(GateKind::RYZ, 0, 1, theta));
    const Statevector sa = run_circuit(a);
    REQUIRE_THAT(sa.amplitudes()[2].real(), Catch::Matchers::WithinAbs(std::sin(theta / 2), 1e-15));
    REQUIRE_THAT(std::abs(sa.amplitudes()[1]), Catch::Matchers::WithinAbs(0.0, 1e-15));
    Circuit b(2);
    b.push(Gate::two(GateKind::RZY, 0, 1, theta));
    const Statevector sb = run_circuit(b);
    REQUIRE_THAT(sb.amplitudes()[1].real(), Catch::Matchers::WithinAbs(std::sin(theta / 2), 1e-15));
    REQUIRE_THAT(std::abs(sb.amplitudes()[2]), Catch::Matchers::WithinAbs(0.0, 1e-15));
  }
  SECTION("matches the dense matrix-product oracle on random circuits") {
    std::mt19937_64 eng(2718);
    for (int trial = 0; trial < 60; ++trial) {
      const int n = 2 + trial % 5;
      const Circuit c = oracles::random_circuit(n, 25, eng);
      const Statevector sv = run_circuit(c);
      const Eigen::VectorXcd expected = oracles::run_circuit_dense(c);
      double worst = 0.0;
      for (long z = 0; z < expected.size(); ++z)
        worst = std::max(worst, std::abs(expected(z) - sv.amplitudes()[static_cast<std::size_t>(z)]));
      REQUIRE(worst < 1e-10);
      REQUIRE(std::abs(sv.norm_squared() - 1.0) < 1e-10);
    }
  }
  SECTION("width budget is enforced") {
    REQUIRE_THROWS_WITH(run_circuit(Circuit(7), 6), Catch::Matchers::ContainsSubstring("budget"));
  }
}

TEST_CASE("sampling") {
  SECTION("a basis state always samples itself") {
    Circuit c(3);
    c.push(Gate::one(GateKind::RY, 1, std::numbers::pi));
    const SampleSet samples = sample(run_circuit(c), 100, 5);
    REQUIRE(samples.counts.size() == 1);
    REQUIRE(samples.counts.at("010") == 100);
  }
  SECTION("uniform two-qubit state is within 4 sigma per outcome") {
    Circuit c(2);
    for (int q = 0; q < 2; ++q) c.push(Gate::one(GateKind::RY, q, std::numbers::pi / 2));
    const std::uint64_t shots = 40000;
    const SampleSet samples = sample(run_circuit(c), shots, 11);
    const double sigma = std::sqrt(shots * 0.25 * 0.75);
    for (const auto& [bits, count] : samples.counts)
      REQUIRE(std::abs(static_cast<double>(count) - shots * 0.25) < 4 * sigma);
  }
  SECTION("fixed seeds reproduce the sample set") {
    const SpinGlassInstance inst = random_gaussian_instance(4, 8);
    BuildConfig cfg;
    const Statevector sv = run_circuit(build_dcqo_circuit(inst, cfg, BiasField::zero(4)));
    const SampleSet a = sample(sv, 5000, 42);
    const SampleSet b = sample(sv, 5000, 42);
    REQUIRE(a.counts == b.counts);
  }
}

TEST_CASE("sigma_z expectations") {
  SECTION("|0...0> gives +1 everywhere") {
    const std::vector<double> e = expectation_z(run_circuit(Circuit(3)));
    for (double v : e) REQUIRE(v == 1.0);
  }
  SECTION("uniform superposition gives 0 everywhere") {
    Circuit c(3);
    for (int q = 0; q < 3; ++q) c.push(Gate::one(GateKind::RY, q, std::numbers::pi / 2));
    for (double v : expectation_z(run_circuit(c)))
      REQUIRE_THAT(v, Catch::Matchers::WithinAbs(0.0, 1e-12));
  }
  SECTION("sampled estimate converges to the exact value") {
    std::mt19937_64 eng(12);
    const Circuit c = oracles::random_circuit(4, 20, eng);
    const Statevector sv = run_circuit(c);
    const std::vector<double> exact = expectation_z(sv);
    const std::vector<double> estimate = expectation_z(sample(sv, 1000000, 3));
    for (int i = 0; i < 4; ++i) {
      REQUIRE(std::abs(exact[i]) <= 1.0);
      REQUIRE_THAT(estimate[i], Catch::Matchers::WithinAbs(exact[i], 5e-3));
    }
  }
}

TEST_CASE("success probability") {
  SECTION("exact basis state scores 1") {
    Circuit c(2);
    c.push(Gate::one(GateKind::RY, 0, std::numbers::pi));
    const GroundTruth gt{0.0, {"10"}};
    REQUIRE_THAT(success_probability(run_circuit(c), gt), Catch::Matchers::WithinAbs(1.0, 1e-12));
  }
  SECTION("uniform state scores 2^-n against a unique ground state") {
    Circuit c(4);
    for (int q = 0; q < 4; ++q) c.push(Gate::one(GateKind::RY, q, std::numbers::pi / 2));
    const GroundTruth gt{0.0, {"0110"}};
    REQUIRE_THAT(success_probability(run_circuit(c), gt),
                 Catch::Matchers::WithinAbs(1.0 / 16.0, 1e-12));
  }
  SECTION("statevector value is the infinite-shot limit of sampling") {
    const SpinGlassInstance inst = random_gaussian_instance(6, 15);
    const GroundTruth gt = exact_ground_state(inst);
    BuildConfig cfg;
    const Statevector sv = run_circuit(build_dcqo_circuit(inst, cfg, BiasField::zero(6)));
    const double exact = success_probability(sv, gt);
    for (std::uint64_t shots : {1000ULL, 100000ULL, 10000000ULL}) {
      const double sampled = success_probability(sample(sv, shots, 9), gt);
      const double sigma = std::sqrt(std::max(exact * (1.0 - exact), 1e-6) / static_cast<double>(shots));
      REQUIRE(std::abs(sampled - exact) < 6.0 * sigma + 1e-6);
    }
  }
  SECTION("dual-path cross-check on a pinned DCQO run") {
    const SpinGlassInstance inst = random_gaussian_instance(10, 5);
    const GroundTruth gt = exact_ground_state(inst);
    BuildConfig cfg;
    const Circuit c = build_dcqo_circuit(inst, cfg, BiasField::zero(10));
    const double via_simulator = success_probability(run_circuit(c), gt);
    Eigen::VectorXcd dense = oracles::run_circuit_dense(c);
    double via_oracle = 0.0;
    for (const std::string& state : gt.states)
      via_oracle += std::norm(dense(static_cast<long>(index_of_bitstring(state))));
    REQUIRE_THAT(via_simulator, Catch::Matchers::WithinAbs(via_oracle, 1e-10));
  }
}

TEST_CASE("energy statistics over samples") {
  const SpinGlassInstance inst(3, {0.0, 0.0, 0.0}, {{0, 1, -1.0}, {1, 2, -1.0}});
  SECTION("single outcome collapses mean and min") {
    SampleSet samples;
    samples.n_shots = 7;
    samples.counts["010"] = 7;
    const EnergyStats stats = energy_statistics(samples, inst);
    REQUIRE(stats.mean == energy(inst, "010"));
    REQUIRE(stats.min == stats.mean);
    REQUIRE(stats.histogram.counts.size() == 1);
  }
  SECTION("uniform samples of a zero-field model average to zero") {
    Circuit c(3);
    for (int q = 0; q < 3; ++q) c.push(Gate::one(GateKind::RY, q, std::numbers::pi / 2));
    const SampleSet samples = sample(run_circuit(c), 200000, 1);
    const EnergyStats stats = energy_statistics(samples, inst);
    REQUIRE_THAT(stats.mean, Catch::Matchers::WithinAbs(0.0, 0.02));
    REQUIRE(stats.min == -2.0);
    std::uint64_t total = 0;
    for (std::uint64_t b : stats.histogram.counts) total += b;
    REQUIRE(total == samples.n_shots);
  }
  SECTION("pure ground-state samples report the ground energy") {
    SampleSet samples;
    samples.n_shots = 3;
    samples.counts["000"] = 3;
    const EnergyStats stats = energy_statistics(samples, inst);
    REQUIRE(stats.mean == exact_ground_state(inst).energy);
  }
}

TEST_CASE("sample CSV export") {
  const SpinGlassInstance inst(2, {1.0, -1.0}, {});
  SampleSet samples;
  samples.n_shots = 5;
  samples.counts["00"] = 3;
  samples.counts["11"] = 2;
  std::ostringstream out;
  write_samples_csv(out, samples, inst);
  REQUIRE(out.str() == "bitstring,count,energy\n00,3,0\n11,2,0\n");
}
