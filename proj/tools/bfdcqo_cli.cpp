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

#include <CLI11.hpp>
#include <iostream>
#include <string>

#include "bfdcqo/io.hpp"
#include "bfdcqo/loop.hpp"
#include "bfdcqo/report.hpp"
#include "bfdcqo/sweep.hpp"

namespace {

struct GenerateArgs {
  int n = 10;
  std::uint64_t seed = 0;
  std::string topology = "all-to-all";
  std::string out;
};

struct WmisEncodeArgs {
  std::string in;
  double penalty = 0.0;  // 0 = default (max weight + 1)
  std::string out;
};

struct SolveArgs {
  std::string in;
  std::string out;
};

struct RunArgs {
  std::string algo = "bfdcqo";
  std::string in;
  std::string ground_truth;
  double total_time = 0.0;
  double dt = 0.1;
  int n_trot = 3;
  std::uint64_t n_shots = 1000;
  int n_iter = 10;
  double theta_cutoff = 0.0;
  std::string bias_mode = "bias";
  std::string bias_source = "sampled";
  std::string cd_mode = "impulse";
  std::uint64_t seed = 0;
  std::string out;
  std::string dump_circuit;
  std::string dump_samples;
  int qaoa_inits = 20;
  int qaoa_max_evals = 300;
  int max_qubits = 26;
};

struct SweepArgs {
  std::string spec;
  int workers = 1;
  std::string out;
};

struct ReportArgs {
  std::string in;
  std::string out;
};

int do_run(const RunArgs& args) {
  using namespace bfdcqo;
  const SpinGlassInstance inst = instance_from_json(read_json_file(args.in));
  std::optional<GroundTruth> gt;
  if (!args.ground_truth.empty()) gt = ground_truth_from_json(read_json_file(args.ground_truth));

  RunConfig cfg;
  cfg.build.total_time = args.total_time;
  cfg.build.dt = args.dt;
  cfg.build.n_trot = args.n_trot;
  cfg.build.theta_cutoff = args.theta_cutoff;
  cfg.build.cd_mode = cd_mode_from_name(args.cd_mode);
  cfg.n_shots = args.n_shots;
  cfg.n_iter = args.n_iter;
  cfg.bias_mode = bias_mode_from_name(args.bias_mode);
  cfg.bias_source = bias_source_from_name(args.bias_source);
  cfg.seed = args.seed;
  cfg.max_qubits = args.max_qubits;
  const GroundTruth* gt_ptr = gt ? &*gt : nullptr;

  std::vector<IterationRecord> records;
  json extra;
  Circuit final_circuit(inst.n());
  if (args.algo == "bfdcqo") {
    records = bfdcqo_run(inst, cfg, gt_ptr);
    final_circuit = build_dcqo_circuit(inst, cfg.build, BiasField{records.back().hb_used});
  } else if (args.algo == "dcqo" || args.algo == "adiabatic") {
    cfg.n_iter = 1;
    cfg.bias_mode = BiasMode::none;
    if (args.algo == "adiabatic") cfg.build.cd_mode = CdMode::adiabatic;
    records.push_back(dcqo_run(inst, cfg, gt_ptr));
    final_circuit = build_dcqo_circuit(inst, cfg.build, BiasField{records.back().hb_used});
  } else if (args.algo == "qaoa") {
    const QaoaResult q = qaoa_run(inst, args.n_trot, args.qaoa_inits, args.qaoa_max_evals,
                                  args.n_shots, args.seed, gt_ptr, args.max_qubits);
    records.push_back(q.record);
    extra["qaoa"] = {{"p", args.n_trot},
                     {"n_inits", args.qaoa_inits},
                     {"max_evals", args.qaoa_max_evals},
                     {"gammas", q.gammas},
                     {"betas", q.betas},
                     {"best_energy", q.best_energy},
                     {"evals", q.evals}};
    final_circuit = build_qaoa_circuit(inst, args.n_trot, q.gammas, q.betas);
  } else {
    throw std::invalid_argument("unknown algorithm: " + args.algo);
  }

  json out = run_to_json(args.algo, inst, cfg, records);
  for (auto& [key, value] : extra.items()) out[key] = value;
  write_json_file(args.out, out);
  if (!args.dump_circuit.empty()) write_json_file(args.dump_circuit, circuit_to_json(final_circuit));
  if (!args.dump_samples.empty()) {
    std::ofstream csv(args.dump_samples);
    if (!csv) throw std::runtime_error("cannot open " + args.dump_samples + " for writing");
    write_samples_csv(csv, records.back().samples, inst);
  }

  const IterationRecord& last = records.back();
  std::cout << args.algo << ": " << records.size() << " iteration(s), final min energy "
            << format_double(last.min_energy);
  if (last.p_gs) std::cout << ", p_gs " << format_double(*last.p_gs);
  std::cout << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bias-field digitized counterdiabatic optimization toolkit"};
  app.require_subcommand(1);

  GenerateArgs gen;
  CLI::App* generate = app.add_subcommand("generate", "generate a random spin-glass instance");
  generate->add_option("--n", gen.n, "spin count")->required();
  generate->add_option("--seed", gen.seed, "generator seed")->required();
  generate->add_option("--topology", gen.topology, "all-to-all or heavy-hex")
      ->check(CLI::IsMember({"all-to-all", "heavy-hex"}));
  generate->add_option("--out", gen.out, "output instance JSON")->required();

  WmisEncodeArgs wmis;
  CLI::App* wmis_encode = app.add_subcommand("wmis-encode", "encode a WMIS problem as a spin glass");
  wmis_encode->add_option("--in", wmis.in, "WMIS JSON file")->required();
  wmis_encode->add_option("--penalty", wmis.penalty, "edge penalty (default: max weight + 1)");
  wmis_encode->add_option("--out", wmis.out, "output instance JSON")->required();

  SolveArgs solve;
  CLI::App* solve_exact = app.add_subcommand("solve-exact", "exhaustive ground-state solve");
  solve_exact->add_option("--in", solve.in, "instance JSON")->required();
  solve_exact->add_option("--out", solve.out, "output ground-truth JSON")->required();

  RunArgs run;
  CLI::App* run_cmd = app.add_subcommand("run", "run one optimization algorithm on an instance");
  run_cmd->add_option("--algo", run.algo, "algorithm")
      ->check(CLI::IsMember({"bfdcqo", "dcqo", "adiabatic", "qaoa"}))
      ->required();
  run_cmd->add_option("--in", run.in, "instance JSON")->required();
  run_cmd->add_option("--ground-truth", run.ground_truth, "ground-truth JSON (enables p_gs)");
  run_cmd->add_option("--T", run.total_time, "schedule length (0 = n_trot * dt)");
  run_cmd->add_option("--dt", run.dt, "Trotter step size");
  run_cmd->add_option("--n-trot", run.n_trot, "Trotter steps (QAOA: layer count p)");
  run_cmd->add_option("--n-shots", run.n_shots, "shots per iteration");
  run_cmd->add_option("--n-iter", run.n_iter, "feedback iterations");
  run_cmd->add_option("--theta-cutoff", run.theta_cutoff, "gate angle cutoff");
  run_cmd->add_option("--bias-mode", run.bias_mode, "bias, antibias or none")
      ->check(CLI::IsMember({"bias", "antibias", "none"}));
  run_cmd->add_option("--bias-source", run.bias_source, "exact or sampled")
      ->check(CLI::IsMember({"exact", "sampled"}));
  run_cmd->add_option("--cd-mode", run.cd_mode, "impulse or full")
      ->check(CLI::IsMember({"impulse", "full"}));
  run_cmd->add_option("--seed", run.seed, "run seed");
  run_cmd->add_option("--out", run.out, "output run JSON")->required();
  run_cmd->add_option("--dump-circuit", run.dump_circuit, "write the final iteration's circuit");
  run_cmd->add_option("--dump-samples", run.dump_samples, "write the final iteration's samples CSV");
  run_cmd->add_option("--qaoa-inits", run.qaoa_inits, "QAOA random initializations");
  run_cmd->add_option("--qaoa-max-evals", run.qaoa_max_evals, "optimizer evaluation cap per init");
  run_cmd->add_option("--max-qubits", run.max_qubits, "simulation width budget");

  SweepArgs sweep_args;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "run an ensemble study from a spec file");
  sweep_cmd->add_option("--spec", sweep_args.spec, "sweep spec JSON")->required();
  sweep_cmd->add_option("--workers", sweep_args.workers, "parallel workers");
  sweep_cmd->add_option("--out", sweep_args.out, "output directory")->required();

  ReportArgs report_args;
  CLI::App* report_cmd = app.add_subcommand("report", "render tables and plots from sweep output");
  report_cmd->add_option("--in", report_args.in, "sweep output directory")->required();
  report_cmd->add_option("--out", report_args.out, "report directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    using namespace bfdcqo;
    if (generate->parsed()) {
      const SpinGlassInstance inst = random_gaussian_instance(gen.n, gen.seed, gen.topology);
      write_json_file(gen.out, instance_to_json(inst));
      std::cout << "wrote " << gen.out << " (" << inst.n() << " spins, "
                << inst.couplings().size() << " couplings)\n";
    } else if (wmis_encode->parsed()) {
      const WMISInstance w = wmis_from_json(read_json_file(wmis.in));
      const double penalty = wmis.penalty > 0.0 ? wmis.penalty : wmis_default_penalty(w);
      const SpinGlassInstance inst = wmis_to_ising(w, penalty);
      write_json_file(wmis.out, instance_to_json(inst));
      std::cout << "wrote " << wmis.out << " (penalty " << format_double(penalty) << ", offset "
                << format_double(inst.offset()) << ")\n";
    } else if (solve_exact->parsed()) {
      const SpinGlassInstance inst = instance_from_json(read_json_file(solve.in));
      const GroundTruth gt = exact_ground_state(inst);
      write_json_file(solve.out, ground_truth_to_json(gt));
      std::cout << "ground energy " << format_double(gt.energy) << " with " << gt.states.size()
                << " state(s)\n";
    } else if (run_cmd->parsed()) {
      return do_run(run);
    } else if (sweep_cmd->parsed()) {
      const SweepSpec spec = sweep_spec_from_json(read_json_file(sweep_args.spec));
      const std::vector<SweepRow> rows = run_sweep(spec, sweep_args.out, sweep_args.workers);
      int failures = 0;
      for (const SweepRow& row : rows)
        if (!row.error.empty()) ++failures;
      std::cout << rows.size() << " cells (" << failures << " failed), wrote " << sweep_args.out
                << "/sweep.csv\n";
    } else if (report_cmd->parsed()) {
      render_report(report_args.in, report_args.out);
      std::cout << "report written to " << report_args.out << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
