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

#include "bfdcqo/builder.hpp"
#include "bfdcqo/simulator.hpp"
#include "support/oracles.hpp"

using namespace bfdcqo;

namespace {

double prep_energy(double hx, double hb, double theta) {
  // <v| hx X - hb Z |v> for v = RY(theta)|0>.
  const double v0 = std::cos(theta / 2), v1 = std::sin(theta / 2);
  return hx * 2 * v0 * v1 - hb * (v0 * v0 - v1 * v1);
}

}  // namespace

TEST_CASE("preparation angles") {
  SECTION("unbiased transverse field prepares |+>") {
    const std::vector<double> hx = {-1.0};
    const auto angles = initial_state_angles(hx, BiasField{{0.0}});
    REQUIRE_THAT(angles[0], Catch::Matchers::WithinAbs(std::numbers::pi / 2, 1e-15));
  }
  SECTION("strong positive bias pins the qubit near |0>") {
    const std::vector<double> hx = {-1e-6};
    const auto angles = initial_state_angles(hx, BiasField{{1.0}});
    REQUIRE(std::abs(angles[0]) < 1e-5);
  }
  SECTION("prepared state reaches the single-qubit ground energy") {
    std::mt19937_64 eng(6);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (int trial = 0; trial < 1000; ++trial) {
      double hx = 2.0 * unif(eng), hb = unif(eng);
      if (hx == 0.0 && hb == 0.0) hx = 1.0;
      const auto angles = initial_state_angles(std::vector<double>{hx}, BiasField{{hb}});
      REQUIRE_THAT(prep_energy(hx, hb, angles[0]),
                   Catch::Matchers::WithinAbs(-std::hypot(hx, hb), 1e-12));
    }
  }
  SECTION("doubly vanishing field is rejected") {
    REQUIRE_THROWS_AS(initial_state_angles(std::vector<double>{0.0}, BiasField{{0.0}}),
                      std::invalid_argument);
  }
}

TEST_CASE("impulse circuit structure") {
  SECTION("n=2, one step: prep + CD gates") {
    const SpinGlassInstance inst(2, {0.4, -0.3}, {{0, 1, 0.7}});
    BuildConfig cfg;
    cfg.n_trot = 1;
    const Circuit c = build_dcqo_circuit(inst, cfg, BiasField::zero(2));
    REQUIRE(c.gates().size() == 6);
    REQUIRE(c.gates()[0].kind == GateKind::RY);
    REQUIRE(c.gates()[1].kind == GateKind::RY);
    REQUIRE(c.gates()[2].kind == GateKind::RY);
    REQUIRE(c.gates()[3].kind == GateKind::RY);
    REQUIRE(c.gates()[4].kind == GateKind::RYZ);
    REQUIRE(c.gates()[5].kind == GateKind::RZY);
  }
  SECTION("a huge cutoff leaves the preparation layer alone") {
    const SpinGlassInstance inst = random_gaussian_instance(4, 2);
    BuildConfig cfg;
    cfg.theta_cutoff = 100.0;
    const Circuit c = build_dcqo_circuit(inst, cfg, BiasField::zero(4));
    REQUIRE(c.gates().size() == 4);
    for (const Gate& g : c.gates()) {
      REQUIRE(g.kind == GateKind::RY);
      REQUIRE_THAT(g.angle, Catch::Matchers::WithinAbs(std::numbers::pi / 2, 1e-12));
    }
  }
  SECTION("zero bias reproduces plain DCQO") {
    const SpinGlassInstance inst = random_gaussian_instance(5, 12);
    BuildConfig cfg;
    cfg.cd_mode = CdMode::full;
    const Circuit c = build_dcqo_circuit(inst, cfg, BiasField::zero(5));
    for (int q = 0; q < 5; ++q)
      REQUIRE_THAT(c.gates()[q].angle, Catch::Matchers::WithinAbs(std::numbers::pi / 2, 1e-12));
    // RZ angles must be exactly 2 dt lambda h_i: no bias contribution.
    const Schedule sched{effective_total_time(cfg)};
    std::size_t idx = 5;  // after prep
    for (int k = 1; k <= cfg.n_trot; ++k) {
      const double lam = lambda_at(k * cfg.dt, sched);
      idx += 5;  // skip the RX block
      for (int q = 0; q < 5; ++q, ++idx) {
        REQUIRE(c.gates()[idx].kind == GateKind::RZ);
        REQUIRE_THAT(c.gates()[idx].angle,
                     Catch::Matchers::WithinAbs(2.0 * cfg.dt * lam * inst.fields()[q], 1e-15));
      }
      idx += inst.couplings().size();      // ZZ block
      idx += 5 + 2 * inst.couplings().size();  // CD blocks
    }
  }
  SECTION("impulse angles follow the CD coefficients") {
    const SpinGlassInstance inst(3, {0.7, -1.1, 0.4}, {{0, 1, 0.9}, {1, 2, -0.6}});
    const std::vector<double> hx = {-1.0, -0.5, -2.0};
    const BiasField bias{{0.2, -0.3, 0.1}};
    BuildConfig cfg;
    cfg.hx = hx;
    cfg.n_trot = 2;
    cfg.total_time = 1.0;
    const Circuit c = build_dcqo_circuit(inst, cfg, bias);
    const CDPolynomial poly = cd_polynomial(inst, hx, bias.hb);
    const Schedule sched{1.0};
    std::size_t idx = 3;  // skip prep
    for (int k = 1; k <= 2; ++k) {
      const double t = k * cfg.dt;
      const double kick = 4.0 * cfg.dt * lambda_dot_at(t, sched) * alpha1(poly, lambda_at(t, sched));
      for (int q = 0; q < 3; ++q, ++idx) {
        REQUIRE(c.gates()[idx].kind == GateKind::RY);
        REQUIRE(c.gates()[idx].angle == kick * hx[q] * inst.fields()[q]);
      }
      for (const Coupling& cpl : inst.couplings()) {
        REQUIRE(c.gates()[idx].kind == GateKind::RYZ);
        REQUIRE(c.gates()[idx++].angle == kick * cpl.value * hx[cpl.i]);
        REQUIRE(c.gates()[idx].kind == GateKind::RZY);
        REQUIRE(c.gates()[idx++].angle == kick * cpl.value * hx[cpl.j]);
      }
    }
    REQUIRE(idx == c.gates().size());
  }
  SECTION("all emitted angles are finite") {
    const SpinGlassInstance inst = random_gaussian_instance(6, 77);
    for (CdMode mode : {CdMode::impulse, CdMode::full, CdMode::adiabatic}) {
      BuildConfig cfg;
      cfg.cd_mode = mode;
      const Circuit c = build_dcqo_circuit(inst, cfg, BiasField{{0.3, -0.9, 0.0, 1.0, -1.0, 0.5}});
      for (const Gate& g : c.gates()) REQUIRE(std::isfinite(g.angle));
    }
  }
}

TEST_CASE("circuits far beyond the simulation budget still build") {
  const SpinGlassInstance inst = random_gaussian_instance(100, 0, "heavy-hex");
  BuildConfig cfg;
  cfg.n_trot = 2;
  cfg.theta_cutoff = 0.05;
  const Circuit c = build_dcqo_circuit(inst, cfg, BiasField::zero(100));
  REQUIRE(c.n_qubits() == 100);
  const GateStats stats = gate_stats(c);
  REQUIRE(stats.two_qubit <= 2 * 2 * static_cast<int>(inst.couplings().size()));
  REQUIRE(stats.two_qubit > 0);
  REQUIRE_THROWS_AS(run_circuit(c), std::invalid_argument);
}

TEST_CASE("impulse gates are a subset of full-mode gates") {
  const SpinGlassInstance inst = random_gaussian_instance(4, 9);
  const BiasField bias{{0.2, -0.5, 0.8, 0.0}};
  BuildConfig cfg;
  cfg.cd_mode = CdMode::impulse;
  const Circuit impulse = build_dcqo_circuit(inst, cfg, bias);
  cfg.cd_mode = CdMode::full;
  const Circuit full = build_dcqo_circuit(inst, cfg, bias);
  cfg.cd_mode = CdMode::adiabatic;
  const Circuit adiabatic = build_dcqo_circuit(inst, cfg, bias);
  auto contains = [](const Circuit& big, const Gate& g) {
    for (const Gate& other : big.gates())
      if (other.kind == g.kind && other.qubits == g.qubits && other.angle == g.angle) return true;
    return false;
  };
  for (const Gate& g : impulse.gates()) REQUIRE(contains(full, g));
  REQUIRE(impulse.gates().size() + adiabatic.gates().size() ==
          full.gates().size() + 4);  // prep layer counted twice
  for (const Gate& g : adiabatic.gates()) {
    REQUIRE(g.kind != GateKind::RYZ);
    REQUIRE(g.kind != GateKind::RZY);
  }
}

TEST_CASE("trotterized full evolution converges to the dense integration") {
  const SpinGlassInstance inst = random_gaussian_instance(4, 21);
  const std::vector<double> hb = {0.3, -0.2, 0.5, -0.4};
  const std::vector<double> hx(4, -1.0);
  const double t_end = 0.4;
  const oracles::DenseCdSystem sys(inst, hx, hb, 1.0);
  const auto prep = initial_state_angles(hx, BiasField{hb});
  Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(16);
  {
    Circuit prep_only(4);
    for (int q = 0; q < 4; ++q) prep_only.push(Gate::one(GateKind::RY, q, prep[q]));
    psi0 = oracles::run_circuit_dense(prep_only);
  }
  const Eigen::VectorXcd reference = oracles::integrate_schroedinger(sys, psi0, t_end, 20000);

  std::vector<double> errors;
  for (int n_trot : {4, 8, 16}) {
    BuildConfig cfg;
    cfg.total_time = 1.0;  // must match the dense system's schedule
    cfg.cd_mode = CdMode::full;
    cfg.n_trot = n_trot;
    cfg.dt = t_end / n_trot;
    const Circuit c = build_dcqo_circuit(inst, cfg, BiasField{hb});
    const Statevector sv = run_circuit(c);
    Eigen::VectorXcd state(16);
    for (int z = 0; z < 16; ++z) state(z) = sv.amplitudes()[static_cast<std::size_t>(z)];
    errors.push_back((state - reference).norm());
  }
  REQUIRE(errors[0] > errors[1]);
  REQUIRE(errors[1] > errors[2]);
}

TEST_CASE("QAOA circuits") {
  SECTION("zero angles leave the uniform superposition") {
    const SpinGlassInstance inst = random_gaussian_instance(3, 1);
    const std::vector<double> zeros = {0.0};
    const Circuit c = build_qaoa_circuit(inst, 1, zeros, zeros);
    const Statevector sv = run_circuit(c);
    for (const auto& amp : sv.amplitudes())
      REQUIRE_THAT(std::norm(amp), Catch::Matchers::WithinAbs(1.0 / 8.0, 1e-12));
  }
  SECTION("single qubit matches the closed form sin(2b) sin(2g)") {
    const SpinGlassInstance inst(1, {1.0}, {});
    std::mt19937_64 eng(10);
    std::uniform_real_distribution<double> unif(0.0, 2 * std::numbers::pi);
    for (int trial = 0; trial < 40; ++trial) {
      const std::vector<double> gamma = {unif(eng)}, beta = {unif(eng)};
      const Statevector sv = run_circuit(build_qaoa_circuit(inst, 1, gamma, beta));
      const double expect_z = expectation_z(sv)[0];
      REQUIRE_THAT(expect_z,
                   Catch::Matchers::WithinAbs(std::sin(2 * beta[0]) * std::sin(2 * gamma[0]), 1e-12));
    }
  }
  SECTION("depth is comparable to the matched DCQO circuit") {
    const SpinGlassInstance inst = random_gaussian_instance(10, 3);
    const std::vector<double> params = {0.3, 0.5, 0.7};
    const Circuit qaoa = build_qaoa_circuit(inst, 3, params, params);
    BuildConfig cfg;
    cfg.n_trot = 3;
    const Circuit dcqo = build_dcqo_circuit(inst, cfg, BiasField::zero(10));
    const GateStats qs = gate_stats(qaoa);
    const GateStats ds = gate_stats(dcqo);
    REQUIRE(ds.two_qubit == 2 * qs.two_qubit);
    REQUIRE(ds.depth <= 3 * qs.depth);
    REQUIRE(qs.depth <= 3 * ds.depth);
  }
  SECTION("parameter count must match p") {
    const SpinGlassInstance inst = random_gaussian_instance(2, 0);
    const std::vector<double> two = {0.1, 0.2};
    REQUIRE_THROWS_AS(build_qaoa_circuit(inst, 1, two, two), std::invalid_argument);
  }
}
