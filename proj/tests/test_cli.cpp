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
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "bfdcqo/io.hpp"
#include "bfdcqo/report.hpp"
#include "bfdcqo/sweep.hpp"

using namespace bfdcqo;
namespace fs = std::filesystem;

namespace {

const char* cli_path() { return BFDCQO_CLI_PATH; }

int run_cli(const std::string& args) {
  const std::string command = std::string(cli_path()) + " " + args + " >/dev/null 2>&1";
  return std::system(command.c_str());
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("bfdcqo_test_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("instance JSON round trip and validation") {
  const SpinGlassInstance inst = random_gaussian_instance(6, 4, "heavy-hex");
  const SpinGlassInstance back = instance_from_json(instance_to_json(inst));
  REQUIRE(back.n() == inst.n());
  REQUIRE(back.fields() == inst.fields());
  REQUIRE(back.couplings().size() == inst.couplings().size());
  REQUIRE(back.topology() == "heavy-hex");

  json bad = instance_to_json(inst);
  bad["J"][0][0] = bad["J"][0][1];  // i == j
  REQUIRE_THROWS_AS(instance_from_json(bad), std::invalid_argument);
  json dup = instance_to_json(inst);
  dup["J"].push_back(dup["J"][0]);
  REQUIRE_THROWS_AS(instance_from_json(dup), std::invalid_argument);
}

TEST_CASE("ground truth and WMIS JSON round trips") {
  const GroundTruth gt{-3.5, {"010", "101"}};
  const GroundTruth back = ground_truth_from_json(ground_truth_to_json(gt));
  REQUIRE(back.energy == gt.energy);
  REQUIRE(back.states == gt.states);

  const WMISInstance w = random_wmis_instance(7, 0.5, 0.5, 1.5, 3);
  const WMISInstance wback = wmis_from_json(wmis_to_json(w));
  REQUIRE(wback.weights == w.weights);
  REQUIRE(wback.edges == w.edges);
}

TEST_CASE("format_double round trips") {
  for (double v : {0.1, -1.0 / 3.0, 1e-300, 123456.789, 0.0}) {
    REQUIRE(std::stod(format_double(v)) == v);
  }
  REQUIRE(format_double(std::numeric_limits<double>::infinity()) == "inf");
}

TEST_CASE("CLI pipeline: generate, solve, run, dump") {
  TempDir dir;
  const std::string inst_path = (dir.path / "inst.json").string();
  const std::string gt_path = (dir.path / "gt.json").string();
  const std::string run_path = (dir.path / "run.json").string();
  const std::string circuit_path = (dir.path / "circuit.json").string();

  REQUIRE(run_cli("generate --n 6 --seed 3 --topology all-to-all --out " + inst_path) == 0);
  REQUIRE(run_cli("solve-exact --in " + inst_path + " --out " + gt_path) == 0);
  REQUIRE(run_cli("run --algo bfdcqo --in " + inst_path + " --ground-truth " + gt_path +
                  " --n-iter 3 --n-shots 200 --bias-source exact --seed 5 --out " + run_path +
                  " --dump-circuit " + circuit_path) == 0);

  const json run_json = read_json_file(run_path);
  REQUIRE(run_json.at("iterations").size() == 3);
  REQUIRE(run_json.at("config").at("bias_source") == "exact");
  REQUIRE(!run_json.at("iterations")[0].at("p_gs").is_null());

  const Circuit dumped = circuit_from_json(read_json_file(circuit_path));
  REQUIRE(dumped.n_qubits() == 6);
  REQUIRE(!dumped.gates().empty());

  // Cross-check the solved ground truth against the library.
  const GroundTruth gt = ground_truth_from_json(read_json_file(gt_path));
  const SpinGlassInstance inst = instance_from_json(read_json_file(inst_path));
  REQUIRE(gt.energy == exact_ground_state(inst).energy);

  // QAOA runs carry their optimized parameters.
  const std::string qaoa_path = (dir.path / "qaoa.json").string();
  REQUIRE(run_cli("run --algo qaoa --in " + inst_path + " --ground-truth " + gt_path +
                  " --n-trot 2 --qaoa-inits 3 --qaoa-max-evals 40 --seed 5 --out " + qaoa_path) ==
          0);
  const json qaoa_json = read_json_file(qaoa_path);
  REQUIRE(qaoa_json.at("qaoa").at("gammas").size() == 2);
  REQUIRE(qaoa_json.at("qaoa").at("betas").size() == 2);
  REQUIRE(qaoa_json.at("qaoa").at("best_energy").get<double>() >= gt.energy - 1e-9);
}

TEST_CASE("CLI wmis-encode matches the library encoding") {
  TempDir dir;
  const std::string wmis_path = (dir.path / "wmis.json").string();
  const std::string inst_path = (dir.path / "encoded.json").string();
  const WMISInstance w = random_wmis_instance(6, 0.5, 0.5, 1.5, 9);
  write_json_file(wmis_path, wmis_to_json(w));
  REQUIRE(run_cli("wmis-encode --in " + wmis_path + " --out " + inst_path) == 0);
  const SpinGlassInstance encoded = instance_from_json(read_json_file(inst_path));
  const SpinGlassInstance expected = wmis_to_ising(w, wmis_default_penalty(w));
  REQUIRE(encoded.fields() == expected.fields());
  REQUIRE(encoded.offset() == expected.offset());
}

TEST_CASE("run files are byte-identical across reruns") {
  TempDir dir;
  const std::string inst_path = (dir.path / "inst.json").string();
  REQUIRE(run_cli("generate --n 5 --seed 8 --topology all-to-all --out " + inst_path) == 0);
  const std::string a = (dir.path / "a.json").string();
  const std::string b = (dir.path / "b.json").string();
  const std::string flags =
      " --n-iter 4 --n-shots 300 --bias-source exact --seed 2 --algo bfdcqo --in " + inst_path;
  REQUIRE(run_cli("run" + flags + " --out " + a) == 0);
  REQUIRE(run_cli("run" + flags + " --out " + b) == 0);
  REQUIRE(slurp(a) == slurp(b));
}

TEST_CASE("sweep harness") {
  TempDir dir;
  SweepSpec spec;
  spec.sizes = {5};
  spec.seeds_per_size = 1;
  spec.algos = {"dcqo"};
  spec.base.bias_source = BiasSource::exact_expectation;
  spec.base.n_iter = 2;
  spec.base.n_shots = 100;

  SECTION("one cell, one row") {
    const auto rows = run_sweep(spec, (dir.path / "out").string());
    REQUIRE(rows.size() == 1);
    REQUIRE(rows[0].error.empty());
    REQUIRE(rows[0].p_gs_final.has_value());
  }

  SECTION("row counts multiply out and csv is stable across reruns") {
    spec.sizes = {5, 6};
    spec.seeds_per_size = 3;
    spec.algos = {"bfdcqo", "dcqo"};
    const auto rows = run_sweep(spec, (dir.path / "out").string(), 2);
    REQUIRE(rows.size() == 12);
    const std::string first = slurp(dir.path / "out" / "sweep.csv");
    run_sweep(spec, (dir.path / "again").string(), 1);
    REQUIRE(slurp(dir.path / "again" / "sweep.csv") == first);
  }

  SECTION("resume replays the manifest without recomputing") {
    spec.seeds_per_size = 2;
    const auto rows = run_sweep(spec, (dir.path / "out").string());
    const std::string csv_before = slurp(dir.path / "out" / "sweep.csv");
    // Truncate the manifest to a single completed cell and resume.
    const fs::path manifest = dir.path / "out" / "manifest.jsonl";
    std::ifstream in(manifest);
    std::string first_line;
    std::getline(in, first_line);
    in.close();
    std::ofstream(manifest, std::ios::trunc) << first_line << '\n';
    fs::remove(dir.path / "out" / "sweep.csv");
    run_sweep(spec, (dir.path / "out").string());
    REQUIRE(slurp(dir.path / "out" / "sweep.csv") == csv_before);
  }

  SECTION("cell failures become error rows") {
    spec.sizes = {30};  // over the exhaustive-solve budget
    const auto rows = run_sweep(spec, (dir.path / "out").string());
    REQUIRE(rows.size() == 1);
    REQUIRE(!rows[0].error.empty());
    REQUIRE(!rows[0].p_gs_final.has_value());
    const std::string csv = slurp(dir.path / "out" / "sweep.csv");
    REQUIRE(csv.find("NA") != std::string::npos);
  }

  SECTION("qaoa cells run through the optimizer") {
    spec.sizes = {4};
    spec.algos = {"qaoa"};
    spec.qaoa = {2, 3, 40};
    const auto rows = run_sweep(spec, (dir.path / "out").string());
    REQUIRE(rows.size() == 1);
    REQUIRE(rows[0].error.empty());
    REQUIRE(rows[0].p_gs_final.value() > 0.0);
  }
}

TEST_CASE("report renders tables and plots") {
  TempDir dir;
  SweepSpec spec;
  spec.sizes = {4, 5};
  spec.seeds_per_size = 2;
  spec.algos = {"bfdcqo", "dcqo"};
  spec.base.bias_source = BiasSource::exact_expectation;
  spec.base.n_iter = 2;
  spec.base.n_shots = 100;
  const std::string sweep_dir = (dir.path / "sweep").string();
  run_sweep(spec, sweep_dir);

  // Also drop a run file and a samples CSV for the histogram paths.
  const SpinGlassInstance inst = random_gaussian_instance(5, 1);
  RunConfig cfg;
  cfg.n_iter = 3;
  cfg.n_shots = 200;
  const auto records = bfdcqo_run(inst, cfg, nullptr);
  write_json_file((fs::path(sweep_dir) / "run_example.json").string(),
                  run_to_json("bfdcqo", inst, cfg, records));
  {
    std::ofstream csv(fs::path(sweep_dir) / "final_samples.csv");
    write_samples_csv(csv, records.back().samples, inst);
  }

  const std::string report_dir = (dir.path / "report").string();
  render_report(sweep_dir, report_dir);
  REQUIRE(fs::exists(fs::path(report_dir) / "summary.csv"));
  REQUIRE(fs::exists(fs::path(report_dir) / "scaling.csv"));
  REQUIRE(fs::exists(fs::path(report_dir) / "pgs_vs_n.svg"));
  REQUIRE(fs::exists(fs::path(report_dir) / "run_example_hist.svg"));
  REQUIRE(fs::exists(fs::path(report_dir) / "final_samples_hist.svg"));
  const std::string svg = slurp(fs::path(report_dir) / "pgs_vs_n.svg");
  REQUIRE(svg.find("<svg") != std::string::npos);
  REQUIRE(svg.find("polyline") != std::string::npos);
}
