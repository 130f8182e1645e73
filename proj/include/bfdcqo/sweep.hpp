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

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "bfdcqo/io.hpp"
#include "bfdcqo/loop.hpp"
#include "bfdcqo/metrics.hpp"

namespace bfdcqo {

struct QaoaSettings {
  int p = 3;
  int n_inits = 20;
  int max_evals = 300;
};

// Ensemble study: every (size, seed, algorithm) cell runs independently; the
// seed doubles as the instance generator seed and the run seed, mirroring the
// seed-indexed instance collections the benchmarks are built on.
struct SweepSpec {
  std::vector<int> sizes;
  int seeds_per_size = 1;
  std::vector<std::string> algos;  // subset of {bfdcqo, dcqo, adiabatic, qaoa}
  std::string topology = "all-to-all";
  RunConfig base;
  QaoaSettings qaoa;
};

inline SweepSpec sweep_spec_from_json(const json& j) {
  SweepSpec spec;
  spec.sizes = j.at("sizes").get<std::vector<int>>();
  spec.seeds_per_size = j.at("seeds_per_size").get<int>();
  spec.algos = j.at("algos").get<std::vector<std::string>>();
  spec.topology = j.value("topology", std::string("all-to-all"));
  if (spec.sizes.empty()) throw std::invalid_argument("sweep needs at least one size");
  if (spec.seeds_per_size < 1) throw std::invalid_argument("seeds_per_size must be positive");
  for (const std::string& algo : spec.algos)
    if (algo != "bfdcqo" && algo != "dcqo" && algo != "adiabatic" && algo != "qaoa")
      throw std::invalid_argument("unknown algorithm in sweep: " + algo);
  if (j.contains("run")) {
    const json& r = j.at("run");
    spec.base.build.total_time = r.value("T", 0.0);
    spec.base.build.dt = r.value("dt", 0.1);
    spec.base.build.n_trot = r.value("n_trot", 3);
    spec.base.build.theta_cutoff = r.value("theta_cutoff", 0.0);
    spec.base.build.cd_mode = cd_mode_from_name(r.value("cd_mode", std::string("impulse")));
    spec.base.n_shots = r.value("n_shots", std::uint64_t{1000});
    spec.base.n_iter = r.value("n_iter", 10);
    spec.base.bias_mode = bias_mode_from_name(r.value("bias_mode", std::string("bias")));
    spec.base.bias_source = bias_source_from_name(r.value("bias_source", std::string("exact")));
  }
  if (j.contains("qaoa")) {
    const json& q = j.at("qaoa");
    spec.qaoa.p = q.value("p", 3);
    spec.qaoa.n_inits = q.value("n_inits", 20);
    spec.qaoa.max_evals = q.value("max_evals", 300);
  }
  return spec;
}

struct SweepRow {
  int size = 0;
  std::uint64_t seed = 0;
  std::string algo;
  std::optional<double> p_gs_first;
  std::optional<double> p_gs_final;
  std::optional<double> mean_energy;
  std::optional<double> min_energy;
  std::optional<double> ar_mean;
  std::optional<double> ar_best;
  std::optional<double> tts_shots;
  std::string error;
};

namespace detail {

inline std::string sweep_cell_key(int size, std::uint64_t seed, const std::string& algo) {
  return std::to_string(size) + ":" + std::to_string(seed) + ":" + algo;
}

inline json sweep_row_to_json(const SweepRow& row) {
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  json j;
  j["size"] = row.size;
  j["seed"] = row.seed;
  j["algo"] = row.algo;
  j["p_gs_first"] = opt(row.p_gs_first);
  j["p_gs_final"] = opt(row.p_gs_final);
  j["mean_energy"] = opt(row.mean_energy);
  j["min_energy"] = opt(row.min_energy);
  j["ar_mean"] = opt(row.ar_mean);
  j["ar_best"] = opt(row.ar_best);
  j["tts_shots"] = row.tts_shots ? (std::isinf(*row.tts_shots) ? json("inf") : json(*row.tts_shots))
                                 : json(nullptr);
  j["error"] = row.error;
  return j;
}

inline SweepRow sweep_row_from_json(const json& j) {
  auto opt = [&](const char* key) -> std::optional<double> {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<double>();
  };
  SweepRow row;
  row.size = j.at("size").get<int>();
  row.seed = j.at("seed").get<std::uint64_t>();
  row.algo = j.at("algo").get<std::string>();
  row.p_gs_first = opt("p_gs_first");
  row.p_gs_final = opt("p_gs_final");
  row.mean_energy = opt("mean_energy");
  row.min_energy = opt("min_energy");
  row.ar_mean = opt("ar_mean");
  row.ar_best = opt("ar_best");
  if (j.contains("tts_shots") && !j.at("tts_shots").is_null()) {
    row.tts_shots = j.at("tts_shots").is_string() ? std::numeric_limits<double>::infinity()
                                                  : j.at("tts_shots").get<double>();
  }
  row.error = j.value("error", std::string());
  return row;
}

inline SweepRow run_sweep_cell(const SweepSpec& spec, int size, std::uint64_t seed,
                               const std::string& algo) {
  SweepRow row;
  row.size = size;
  row.seed = seed;
  row.algo = algo;
  try {
    const SpinGlassInstance inst = random_gaussian_instance(size, seed, spec.topology);
    const GroundTruth gt = exact_ground_state(inst);
    RunConfig cfg = spec.base;
    cfg.seed = seed;
    std::vector<IterationRecord> records;
    int iter_count = 1;
    if (algo == "bfdcqo") {
      records = bfdcqo_run(inst, cfg, &gt);
      iter_count = cfg.n_iter;
    } else if (algo == "dcqo") {
      records.push_back(dcqo_run(inst, cfg, &gt));
    } else if (algo == "adiabatic") {
      cfg.build.cd_mode = CdMode::adiabatic;
      records.push_back(dcqo_run(inst, cfg, &gt));
    } else {
      const QaoaResult q = qaoa_run(inst, spec.qaoa.p, spec.qaoa.n_inits, spec.qaoa.max_evals,
                                    cfg.n_shots, seed, &gt);
      records.push_back(q.record);
    }
    const IterationRecord& first = records.front();
    const IterationRecord& last = records.back();
    row.p_gs_first = first.p_gs;
    row.p_gs_final = last.p_gs;
    row.mean_energy = last.mean_energy;
    row.min_energy = last.min_energy;
    row.ar_mean = last.approximation_ratio_mean;
    row.ar_best = last.approximation_ratio_best;
    if (last.p_gs) row.tts_shots = tts(*last.p_gs, iter_count, cfg.n_shots);
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

}  // namespace detail

inline std::string sweep_csv_header() {
  return "size,seed,algo,p_gs_first,p_gs_final,mean_energy,min_energy,ar_mean,ar_best,tts_shots,error";
}

// One CSV line per cell; undefined metrics print the NA sentinel, infinite
// TTS prints inf.
inline std::string sweep_row_to_csv(const SweepRow& row) {
  auto cell = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string("NA"); };
  std::string line;
  line += std::to_string(row.size);
  line += ',' + std::to_string(row.seed);
  line += ',' + row.algo;
  line += ',' + cell(row.p_gs_first);
  line += ',' + cell(row.p_gs_final);
  line += ',' + cell(row.mean_energy);
  line += ',' + cell(row.min_energy);
  line += ',' + cell(row.ar_mean);
  line += ',' + cell(row.ar_best);
  line += ',' + cell(row.tts_shots);
  std::string error = row.error;
  for (char& c : error)
    if (c == ',' || c == '\n') c = ';';
  line += ',' + error;
  return line;
}

// Executes every cell of the sweep and writes <out_dir>/sweep.csv. Completed
// cells are appended to <out_dir>/manifest.jsonl as they finish; rerunning an
// interrupted sweep replays the manifest and computes only what is missing.
// The CSV is always rewritten in canonical cell order, so its bytes do not
// depend on scheduling or on how often the sweep was resumed.
inline std::vector<SweepRow> run_sweep(const SweepSpec& spec, const std::string& out_dir,
                                       int workers = 1) {
  if (workers < 1) throw std::invalid_argument("need at least one worker");
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  const std::string manifest_path = (fs::path(out_dir) / "manifest.jsonl").string();

  std::map<std::string, SweepRow> done;
  if (fs::exists(manifest_path)) {
    std::ifstream in(manifest_path);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const SweepRow row = detail::sweep_row_from_json(json::parse(line));
      done[detail::sweep_cell_key(row.size, row.seed, row.algo)] = row;
    }
  }

  struct Cell {
    int size;
    std::uint64_t seed;
    std::string algo;
  };
  std::vector<Cell> all_cells;
  for (int size : spec.sizes)
    for (int seed = 0; seed < spec.seeds_per_size; ++seed)
      for (const std::string& algo : spec.algos)
        all_cells.push_back({size, static_cast<std::uint64_t>(seed), algo});

  std::vector<Cell> pending;
  for (const Cell& cell : all_cells)
    if (!done.count(detail::sweep_cell_key(cell.size, cell.seed, cell.algo))) pending.push_back(cell);

  std::mutex io_mutex;
  std::ofstream manifest(manifest_path, std::ios::app);
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    while (true) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= pending.size()) break;
      const Cell& cell = pending[idx];
      const SweepRow row = detail::run_sweep_cell(spec, cell.size, cell.seed, cell.algo);
      std::lock_guard<std::mutex> lock(io_mutex);
      manifest << detail::sweep_row_to_json(row).dump() << '\n';
      manifest.flush();
      done[detail::sweep_cell_key(cell.size, cell.seed, cell.algo)] = row;
    }
  };
  if (workers == 1 || pending.size() <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }

  std::vector<SweepRow> rows;
  rows.reserve(all_cells.size());
  std::string csv = sweep_csv_header() + "\n";
  for (const Cell& cell : all_cells) {
    const SweepRow& row = done.at(detail::sweep_cell_key(cell.size, cell.seed, cell.algo));
    rows.push_back(row);
    csv += sweep_row_to_csv(row) + "\n";
  }
  write_text_file((fs::path(out_dir) / "sweep.csv").string(), csv);
  return rows;
}

}  // namespace bfdcqo
