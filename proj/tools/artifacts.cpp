// SPDX-License-Identifier: Apache-2.0
#include "artifacts.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace pdqcli {

namespace {

using nlohmann::json;

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

void append_g17(std::string& line, double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  line += buf;
}

}  // namespace

void write_quantizer_json(const std::string& path, const pdq::Quantizer& q, std::size_t dim,
                          double distortion) {
  json j;
  j["dim"] = dim;
  json points = json::array();
  for (const auto& p : q.points) {
    if (dim == 1) {
      points.push_back(p.x);
    } else {
      points.push_back(json::array({p.x, p.y}));
    }
  }
  j["points"] = std::move(points);
  j["heights"] = q.heights;
  j["distortion"] = distortion;
  auto out = open_out(path);
  out << j.dump(2) << '\n';
}

pdq::Quantizer load_quantizer_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  json j;
  in >> j;
  const auto dim = j.at("dim").get<std::size_t>();
  pdq::Quantizer q;
  for (const auto& pj : j.at("points")) {
    pdq::Point p;
    if (dim == 1) {
      p.x = pj.get<double>();
    } else {
      p.x = pj.at(0).get<double>();
      p.y = pj.at(1).get<double>();
    }
    q.points.push_back(p);
  }
  q.heights = j.at("heights").get<std::vector<double>>();
  if (q.heights.size() != q.points.size())
    throw std::invalid_argument(path + ": points/heights size mismatch");
  return q;
}

void write_trace_csv(const std::string& path, const std::vector<double>& trace) {
  auto out = open_out(path);
  out << "iteration,distortion\n";
  for (std::size_t i = 0; i < trace.size(); ++i) {
    std::string line = std::to_string(i) + ",";
    append_g17(line, trace[i]);
    out << line << '\n';
  }
}

void write_sweep_csv(const std::string& path, const std::vector<pdq::SweepRow>& rows) {
  auto out = open_out(path);
  out << "alpha,gamma,N,lloydA,lloydB,lloydA_first,lloydB_first,"
         "rd_mean,rd_min,rd_max,hstar,bound,dstar\n";
  for (const auto& row : rows) {
    std::string line;
    const double cols[] = {row.alpha,         row.gamma,        static_cast<double>(row.levels),
                           row.lloyd_a,       row.lloyd_b,      row.lloyd_a_first,
                           row.lloyd_b_first, row.rd_mean,      row.rd_min,
                           row.rd_max,        row.theory_height, row.theory_bound,
                           row.theory_distortion};
    for (std::size_t i = 0; i < std::size(cols); ++i) {
      if (i != 0) line += ',';
      if (i == 2) {
        line += std::to_string(row.levels);
      } else {
        append_g17(line, cols[i]);
      }
    }
    out << line << '\n';
  }
}

void write_run_artifacts(const std::string& dir, const pdq::LloydReport& report,
                         const pdq::Region& region, const pdq::Density& density,
                         const pdq::DistortionParams& params, const pdq::LloydConfig& config) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  const fs::path base(dir);
  write_quantizer_json((base / "quantizer.json").string(), report.quantizer, region.dim(),
                       report.distortion);
  write_trace_csv((base / "trace.csv").string(), report.trace);
  if (region.dim() == 2) {
    const auto grid =
        pdq::grid_partition(report.quantizer, region, density, params, config.grid_resolution_x,
                            config.grid_resolution_y, config.threads);
    auto csv = open_out((base / "partition.csv").string());
    pdq::write_partition_csv(grid, csv);
    auto ppm = open_out((base / "partition.ppm").string());
    pdq::write_partition_ppm(grid, ppm);
  }
}

}  // namespace pdqcli
