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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bfdcqo/io.hpp"
#include "bfdcqo/metrics.hpp"
#include "bfdcqo/sweep.hpp"

namespace bfdcqo {

namespace svg {

// Just enough SVG to plot lines and histograms; axes are linear in the
// transformed coordinates handed in by the caller.
struct Plot {
  double width = 640, height = 440;
  double margin = 60;
  double x_min = 0, x_max = 1, y_min = 0, y_max = 1;
  std::string x_label, y_label, title;
  std::ostringstream body;

  double sx(double x) const {
    return margin + (x - x_min) / (x_max - x_min) * (width - 2 * margin);
  }
  double sy(double y) const {
    return height - margin - (y - y_min) / (y_max - y_min) * (height - 2 * margin);
  }

  void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& color) {
    body << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (auto [x, y] : pts) body << sx(x) << ',' << sy(y) << ' ';
    body << "\"/>\n";
    for (auto [x, y] : pts)
      body << "<circle cx=\"" << sx(x) << "\" cy=\"" << sy(y) << "\" r=\"3\" fill=\"" << color
           << "\"/>\n";
  }

  void legend_entry(int slot, const std::string& label, const std::string& color) {
    const double y = margin + 16.0 * slot;
    body << "<rect x=\"" << width - margin - 110 << "\" y=\"" << y - 9
         << "\" width=\"10\" height=\"10\" fill=\"" << color << "\"/>\n";
    body << "<text x=\"" << width - margin - 95 << "\" y=\"" << y << "\" font-size=\"11\">" << label
         << "</text>\n";
  }

  void tick_x(double x, const std::string& label) {
    body << "<line x1=\"" << sx(x) << "\" y1=\"" << height - margin << "\" x2=\"" << sx(x)
         << "\" y2=\"" << height - margin + 5 << "\" stroke=\"black\"/>\n";
    body << "<text x=\"" << sx(x) << "\" y=\"" << height - margin + 18
         << "\" font-size=\"10\" text-anchor=\"middle\">" << label << "</text>\n";
  }

  void tick_y(double y, const std::string& label) {
    body << "<line x1=\"" << margin - 5 << "\" y1=\"" << sy(y) << "\" x2=\"" << margin
         << "\" y2=\"" << sy(y) << "\" stroke=\"black\"/>\n";
    body << "<text x=\"" << margin - 8 << "\" y=\"" << sy(y) + 3
         << "\" font-size=\"10\" text-anchor=\"end\">" << label << "</text>\n";
  }

  std::string render() const {
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\"" << width - margin
        << "\" y2=\"" << height - margin << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin << "\" y2=\""
        << height - margin << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << width / 2 << "\" y=\"" << height - 14
        << "\" font-size=\"12\" text-anchor=\"middle\">" << x_label << "</text>\n";
    out << "<text x=\"16\" y=\"" << height / 2 << "\" font-size=\"12\" text-anchor=\"middle\" "
        << "transform=\"rotate(-90 16 " << height / 2 << ")\">" << y_label << "</text>\n";
    out << "<text x=\"" << width / 2 << "\" y=\"24\" font-size=\"14\" text-anchor=\"middle\">"
        << title << "</text>\n";
    out << body.str();
    out << "</svg>\n";
    return out.str();
  }
};

inline const std::vector<std::string>& palette() {
  static const std::vector<std::string> colors = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                                  "#ff7f0e", "#8c564b", "#e377c2", "#7f7f7f",
                                                  "#bcbd22", "#17becf"};
  return colors;
}

}  // namespace svg

namespace detail {

inline std::vector<SweepRow> read_sweep_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  std::getline(in, line);  // header
  std::vector<SweepRow> rows;
  auto opt_field = [](const std::string& s) -> std::optional<double> {
    if (s == "NA") return std::nullopt;
    if (s == "inf") return std::numeric_limits<double>::infinity();
    return std::stod(s);
  };
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (int f = 0; f < 10; ++f) {
      const std::size_t comma = line.find(',', start);
      fields.push_back(line.substr(start, comma - start));
      start = comma + 1;
    }
    fields.push_back(line.substr(start));
    SweepRow row;
    row.size = std::stoi(fields[0]);
    row.seed = std::stoull(fields[1]);
    row.algo = fields[2];
    row.p_gs_first = opt_field(fields[3]);
    row.p_gs_final = opt_field(fields[4]);
    row.mean_energy = opt_field(fields[5]);
    row.min_energy = opt_field(fields[6]);
    row.ar_mean = opt_field(fields[7]);
    row.ar_best = opt_field(fields[8]);
    row.tts_shots = opt_field(fields[9]);
    row.error = fields[10];
    rows.push_back(row);
  }
  return rows;
}

}  // namespace detail

// Renders summary tables and static plots from a sweep output directory (and
// any run JSON files found next to it):
//   summary.csv   mean metrics per (algo, size)
//   scaling.csv   ln p_gs vs n least-squares fit per algo
//   pgs_vs_n.svg  mean success probability (log10) against system size
//   <run>_hist.svg  per-iteration sampled-energy histograms of a run file
inline void render_report(const std::string& in_dir, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);

  const fs::path csv_path = fs::path(in_dir) / "sweep.csv";
  if (fs::exists(csv_path)) {
    const std::vector<SweepRow> rows = detail::read_sweep_csv(csv_path.string());
    std::map<std::string, std::map<int, std::vector<const SweepRow*>>> grouped;
    for (const SweepRow& row : rows)
      if (row.error.empty()) grouped[row.algo][row.size].push_back(&row);

    std::string summary = "algo,size,cells,mean_p_gs_first,mean_p_gs_final,mean_ar_mean,mean_ar_best\n";
    std::map<std::string, std::vector<std::pair<double, double>>> curve;
    for (const auto& [algo, by_size] : grouped) {
      for (const auto& [size, cells] : by_size) {
        double p_first = 0, p_final = 0, ar_mean = 0, ar_best = 0;
        int m = 0;
        for (const SweepRow* row : cells) {
          if (!row->p_gs_final) continue;
          p_first += row->p_gs_first.value_or(0.0);
          p_final += *row->p_gs_final;
          ar_mean += row->ar_mean.value_or(0.0);
          ar_best += row->ar_best.value_or(0.0);
          ++m;
        }
        if (m == 0) continue;
        p_first /= m; p_final /= m; ar_mean /= m; ar_best /= m;
        summary += algo + ',' + std::to_string(size) + ',' + std::to_string(m) + ',' +
                   format_double(p_first) + ',' + format_double(p_final) + ',' +
                   format_double(ar_mean) + ',' + format_double(ar_best) + '\n';
        curve[algo].emplace_back(size, p_final);
      }
    }
    write_text_file((fs::path(out_dir) / "summary.csv").string(), summary);

    std::string scaling = "algo,slope,intercept,r_squared\n";
    for (const auto& [algo, points] : curve) {
      int positive = 0;
      for (auto [n, p] : points)
        if (p > 0.0) ++positive;
      if (positive < 2) continue;
      const ScalingFit fit = fit_scaling(points);
      scaling += algo + ',' + format_double(fit.slope) + ',' + format_double(fit.intercept) + ',' +
                 format_double(fit.r_squared) + '\n';
    }
    write_text_file((fs::path(out_dir) / "scaling.csv").string(), scaling);

    if (!curve.empty()) {
      svg::Plot plot;
      plot.title = "mean ground-state success probability";
      plot.x_label = "system size n";
      plot.y_label = "log10 mean p_gs";
      plot.x_min = 1e30; plot.x_max = -1e30; plot.y_min = 1e30; plot.y_max = -1e30;
      std::map<std::string, std::vector<std::pair<double, double>>> transformed;
      for (const auto& [algo, points] : curve) {
        for (auto [n, p] : points) {
          if (!(p > 0.0)) continue;
          const double y = std::log10(p);
          transformed[algo].emplace_back(n, y);
          plot.x_min = std::min(plot.x_min, n); plot.x_max = std::max(plot.x_max, n);
          plot.y_min = std::min(plot.y_min, y); plot.y_max = std::max(plot.y_max, y);
        }
      }
      if (plot.x_min == plot.x_max) { plot.x_min -= 1; plot.x_max += 1; }
      if (plot.y_min >= plot.y_max) { plot.y_min -= 1; plot.y_max += 1; }
      int slot = 0;
      for (const auto& [algo, pts] : transformed) {
        const std::string& color = svg::palette()[slot % svg::palette().size()];
        plot.polyline(pts, color);
        plot.legend_entry(slot, algo, color);
        ++slot;
      }
      std::set<double> sizes;
      for (const auto& [algo, points] : curve)
        for (auto [n, p] : points) sizes.insert(n);
      for (double n : sizes) plot.tick_x(n, format_double(n));
      for (int k = static_cast<int>(std::floor(plot.y_min)); k <= static_cast<int>(std::ceil(plot.y_max)); ++k)
        plot.tick_y(k, std::to_string(k));
      write_text_file((fs::path(out_dir) / "pgs_vs_n.svg").string(), plot.render());
    }
  }

  // Energy histograms for any exported sample CSVs (bitstring,count,energy).
  for (const auto& entry : fs::directory_iterator(in_dir)) {
    if (entry.path().extension() != ".csv" || entry.path().filename() == "sweep.csv") continue;
    std::vector<SampleCsvRow> rows;
    try {
      std::ifstream in(entry.path());
      rows = read_samples_csv(in);
    } catch (...) {
      continue;  // some other CSV
    }
    if (rows.empty()) continue;
    double lo = rows.front().energy, hi = rows.front().energy;
    std::uint64_t shots = 0;
    for (const SampleCsvRow& row : rows) {
      lo = std::min(lo, row.energy);
      hi = std::max(hi, row.energy);
      shots += row.count;
    }
    const std::size_t bins = lo == hi ? 1 : 32;
    std::vector<std::uint64_t> counts(bins, 0);
    const double width = (hi - lo) / static_cast<double>(bins);
    for (const SampleCsvRow& row : rows) {
      std::size_t b = 0;
      if (width > 0.0) b = std::min(bins - 1, static_cast<std::size_t>((row.energy - lo) / width));
      counts[b] += row.count;
    }
    svg::Plot plot;
    plot.title = "sampled energies: " + entry.path().stem().string();
    plot.x_label = "energy";
    plot.y_label = "shot fraction";
    plot.x_min = lo - (width > 0 ? 0.0 : 1.0);
    plot.x_max = hi + (width > 0 ? 0.0 : 1.0);
    plot.y_min = 0.0;
    plot.y_max = 0.0;
    std::vector<std::pair<double, double>> pts;
    for (std::size_t b = 0; b < bins; ++b) {
      const double y = static_cast<double>(counts[b]) / static_cast<double>(shots);
      pts.emplace_back(lo + (static_cast<double>(b) + 0.5) * (width > 0 ? width : 1.0), y);
      plot.y_max = std::max(plot.y_max, y);
    }
    plot.y_max = plot.y_max > 0 ? plot.y_max * 1.05 : 1.0;
    plot.polyline(pts, svg::palette()[0]);
    write_text_file((fs::path(out_dir) / (entry.path().stem().string() + "_hist.svg")).string(),
                    plot.render());
  }

  // Iteration energy histograms for any run files in the input directory.
  for (const auto& entry : fs::directory_iterator(in_dir)) {
    if (entry.path().extension() != ".json" || entry.path().filename() == "spec.json") continue;
    json j;
    try {
      j = read_json_file(entry.path().string());
    } catch (...) {
      continue;
    }
    if (!j.contains("iterations") || !j.contains("instance")) continue;
    const SpinGlassInstance inst = instance_from_json(j.at("instance"));
    svg::Plot plot;
    plot.title = "sampled energy by iteration";
    plot.x_label = "energy";
    plot.y_label = "shot fraction";
    plot.x_min = 1e30; plot.x_max = -1e30; plot.y_min = 0; plot.y_max = 0;
    std::vector<std::pair<std::string, std::vector<std::pair<double, double>>>> series;
    for (const json& iter : j.at("iterations")) {
      SampleSet samples;
      samples.n_shots = iter.at("n_shots").get<std::uint64_t>();
      for (const auto& [bits, count] : iter.at("counts").items())
        samples.counts[bits] = count.get<std::uint64_t>();
      if (samples.counts.empty()) continue;
      const EnergyStats stats = energy_statistics(samples, inst);
      const auto& hist = stats.histogram;
      const double width =
          hist.counts.size() > 1 ? (hist.hi - hist.lo) / static_cast<double>(hist.counts.size()) : 1.0;
      std::vector<std::pair<double, double>> pts;
      for (std::size_t b = 0; b < hist.counts.size(); ++b) {
        const double x = hist.lo + (static_cast<double>(b) + 0.5) * width;
        const double y = static_cast<double>(hist.counts[b]) / static_cast<double>(samples.n_shots);
        pts.emplace_back(x, y);
        plot.x_min = std::min(plot.x_min, x); plot.x_max = std::max(plot.x_max, x);
        plot.y_max = std::max(plot.y_max, y);
      }
      series.emplace_back("iter " + std::to_string(iter.at("index").get<int>()), pts);
    }
    if (series.empty()) continue;
    if (plot.x_min >= plot.x_max) { plot.x_min -= 1; plot.x_max += 1; }
    if (plot.y_max <= 0) plot.y_max = 1;
    plot.y_max *= 1.05;
    int slot = 0;
    for (const auto& [label, pts] : series) {
      const std::string& color = svg::palette()[slot % svg::palette().size()];
      plot.polyline(pts, color);
      if (slot < 12) plot.legend_entry(slot, label, color);
      ++slot;
    }
    const std::string stem = entry.path().stem().string();
    write_text_file((fs::path(out_dir) / (stem + "_hist.svg")).string(), plot.render());
  }
}

}  // namespace bfdcqo
