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

#include <charconv>
#include <fstream>
#include <json.hpp>
#include <ostream>
#include <sstream>
#include <string>

#include "bfdcqo/builder.hpp"
#include "bfdcqo/circuit.hpp"
#include "bfdcqo/instances.hpp"
#include "bfdcqo/loop.hpp"
#include "bfdcqo/simulator.hpp"

namespace bfdcqo {

using json = nlohmann::json;

// Shortest decimal that round-trips the exact double (used for every float
// we put in CSV output; nlohmann::json already round-trips on its own).
inline std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

// ---------------------------------------------------------------------------
// Instance files: {"n", "h", "J": [[i, j, value], ...], "topology", "offset"}
// ---------------------------------------------------------------------------

inline json instance_to_json(const SpinGlassInstance& inst) {
  json j;
  j["n"] = inst.n();
  j["h"] = inst.fields();
  json couplings = json::array();
  for (const Coupling& c : inst.couplings()) couplings.push_back({c.i, c.j, c.value});
  j["J"] = couplings;
  j["topology"] = inst.topology();
  j["offset"] = inst.offset();
  return j;
}

inline SpinGlassInstance instance_from_json(const json& j) {
  const int n = j.at("n").get<int>();
  std::vector<double> h = j.at("h").get<std::vector<double>>();
  std::vector<Coupling> couplings;
  for (const json& entry : j.at("J")) {
    if (!entry.is_array() || entry.size() != 3)
      throw std::invalid_argument("coupling entries must be [i, j, value] triples");
    couplings.push_back({entry[0].get<int>(), entry[1].get<int>(), entry[2].get<double>()});
  }
  return SpinGlassInstance(n, std::move(h), std::move(couplings),
                           j.value("topology", std::string("custom")), j.value("offset", 0.0));
}

// WMIS files: {"vertex_count", "weights", "edges": [[u, v], ...]}

inline json wmis_to_json(const WMISInstance& w) {
  json j;
  j["vertex_count"] = w.vertex_count;
  j["weights"] = w.weights;
  json edges = json::array();
  for (auto [u, v] : w.edges) edges.push_back({u, v});
  j["edges"] = edges;
  return j;
}

inline WMISInstance wmis_from_json(const json& j) {
  WMISInstance w;
  w.vertex_count = j.at("vertex_count").get<int>();
  w.weights = j.at("weights").get<std::vector<double>>();
  for (const json& entry : j.at("edges")) {
    if (!entry.is_array() || entry.size() != 2)
      throw std::invalid_argument("edges must be [u, v] pairs");
    const int u = entry[0].get<int>();
    const int v = entry[1].get<int>();
    w.edges.emplace_back(std::min(u, v), std::max(u, v));
  }
  validate_wmis(w);
  return w;
}

inline json ground_truth_to_json(const GroundTruth& gt) {
  return json{{"energy", gt.energy}, {"states", gt.states}};
}

inline GroundTruth ground_truth_from_json(const json& j) {
  GroundTruth gt;
  gt.energy = j.at("energy").get<double>();
  gt.states = j.at("states").get<std::vector<std::string>>();
  if (gt.states.empty()) throw std::invalid_argument("ground truth needs at least one state");
  return gt;
}

// ---------------------------------------------------------------------------
// Circuit files: {"n_qubits", "gates": [{"kind", "qubits", "angle"}, ...]}
// ---------------------------------------------------------------------------

inline json circuit_to_json(const Circuit& c) {
  json j;
  j["n_qubits"] = c.n_qubits();
  json gates = json::array();
  for (const Gate& g : c.gates()) {
    json entry;
    entry["kind"] = gate_name(g.kind);
    json qubits = json::array();
    for (int k = 0; k < g.arity(); ++k) qubits.push_back(g.qubits[static_cast<std::size_t>(k)]);
    entry["qubits"] = qubits;
    entry["angle"] = g.angle;
    gates.push_back(entry);
  }
  j["gates"] = gates;
  return j;
}

inline Circuit circuit_from_json(const json& j) {
  Circuit c(j.at("n_qubits").get<int>());
  for (const json& entry : j.at("gates")) {
    const GateKind kind = gate_kind_from_name(entry.at("kind").get<std::string>());
    const auto qubits = entry.at("qubits").get<std::vector<int>>();
    const double angle = entry.at("angle").get<double>();
    if (static_cast<int>(qubits.size()) != gate_arity(kind))
      throw std::invalid_argument("gate qubit list does not match arity");
    c.push(gate_arity(kind) == 1 ? Gate::one(kind, qubits[0], angle)
                                 : Gate::two(kind, qubits[0], qubits[1], angle));
  }
  return c;
}

// ---------------------------------------------------------------------------
// Run records
// ---------------------------------------------------------------------------

inline const char* cd_mode_name(CdMode m) {
  switch (m) {
    case CdMode::impulse: return "impulse";
    case CdMode::full: return "full";
    case CdMode::adiabatic: return "adiabatic";
  }
  return "?";
}

inline CdMode cd_mode_from_name(const std::string& name) {
  if (name == "impulse") return CdMode::impulse;
  if (name == "full") return CdMode::full;
  if (name == "adiabatic") return CdMode::adiabatic;
  throw std::invalid_argument("unknown cd mode: " + name);
}

inline const char* bias_mode_name(BiasMode m) {
  switch (m) {
    case BiasMode::bias: return "bias";
    case BiasMode::antibias: return "antibias";
    case BiasMode::none: return "none";
  }
  return "?";
}

inline BiasMode bias_mode_from_name(const std::string& name) {
  if (name == "bias") return BiasMode::bias;
  if (name == "antibias") return BiasMode::antibias;
  if (name == "none") return BiasMode::none;
  throw std::invalid_argument("unknown bias mode: " + name);
}

inline const char* bias_source_name(BiasSource s) {
  return s == BiasSource::exact_expectation ? "exact" : "sampled";
}

inline BiasSource bias_source_from_name(const std::string& name) {
  if (name == "exact") return BiasSource::exact_expectation;
  if (name == "sampled") return BiasSource::sampled;
  throw std::invalid_argument("unknown bias source: " + name);
}

inline json run_config_to_json(const RunConfig& cfg, int n) {
  json j;
  j["T"] = effective_total_time(cfg.build);
  j["dt"] = cfg.build.dt;
  j["n_trot"] = cfg.build.n_trot;
  j["hx"] = effective_hx(cfg.build, n);
  j["cd_mode"] = cd_mode_name(cfg.build.cd_mode);
  j["theta_cutoff"] = cfg.build.theta_cutoff;
  j["n_shots"] = cfg.n_shots;
  j["n_iter"] = cfg.n_iter;
  j["bias_mode"] = bias_mode_name(cfg.bias_mode);
  j["bias_source"] = bias_source_name(cfg.bias_source);
  j["seed"] = cfg.seed;
  return j;
}

inline json iteration_record_to_json(const IterationRecord& rec) {
  json j;
  j["index"] = rec.index;
  j["hb_used"] = rec.hb_used;
  j["p_gs"] = rec.p_gs ? json(*rec.p_gs) : json(nullptr);
  j["mean_energy"] = rec.mean_energy;
  j["min_energy"] = rec.min_energy;
  j["approximation_ratio_mean"] =
      rec.approximation_ratio_mean ? json(*rec.approximation_ratio_mean) : json(nullptr);
  j["approximation_ratio_best"] =
      rec.approximation_ratio_best ? json(*rec.approximation_ratio_best) : json(nullptr);
  json counts = json::object();
  for (const auto& [bits, count] : rec.samples.counts) counts[bits] = count;
  j["counts"] = counts;
  j["n_shots"] = rec.samples.n_shots;
  return j;
}

// Full run file: config echo, the instance itself (so reports are
// self-contained), and one entry per iteration.
inline json run_to_json(const std::string& algo, const SpinGlassInstance& inst,
                        const RunConfig& cfg, const std::vector<IterationRecord>& records) {
  json j;
  j["algo"] = algo;
  j["config"] = run_config_to_json(cfg, inst.n());
  j["instance"] = instance_to_json(inst);
  json iters = json::array();
  for (const IterationRecord& rec : records) iters.push_back(iteration_record_to_json(rec));
  j["iterations"] = iters;
  return j;
}

inline void write_samples_csv(std::ostream& os, const SampleSet& samples,
                              const SpinGlassInstance& inst) {
  os << "bitstring,count,energy\n";
  for (const auto& [bits, count] : samples.counts)
    os << bits << ',' << count << ',' << format_double(energy(inst, bits)) << '\n';
}

struct SampleCsvRow {
  std::string bitstring;
  std::uint64_t count;
  double energy;
};

inline std::vector<SampleCsvRow> read_samples_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "bitstring,count,energy")
    throw std::invalid_argument("not a samples CSV (missing header)");
  std::vector<SampleCsvRow> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const std::size_t c1 = line.find(',');
    const std::size_t c2 = line.find(',', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
      throw std::invalid_argument("malformed samples CSV row: " + line);
    rows.push_back({line.substr(0, c1), std::stoull(line.substr(c1 + 1, c2 - c1 - 1)),
                    std::stod(line.substr(c2 + 1))});
  }
  return rows;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  in >> j;
  return j;
}

inline void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << j.dump(2) << '\n';
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
}

}  // namespace bfdcqo
