// SPDX-License-Identifier: Apache-2.0
// Subcommand entry points. main.cpp fills the option structs from the command
// line; everything below is plain logic so it can be driven from tests.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pdqcli {

struct Solve1dOptions {
  double length = 1.0;
  std::size_t levels = 1;
  double gamma = 1.0;
  bool gamma_set = false;
  double alpha = 0.0;
  bool alpha_set = false;
  double beta = 1.0;
  bool as_json = false;
  std::string out_path;  // optional quantizer JSON destination
};

struct LloydOptions {
  std::string scenario_path;
  std::string variant;  // "", "A", or "B"; empty keeps the scenario value
  int seeds = 0;        // 0 keeps the scenario value
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string out_dir;  // overrides the scenario output_dir
  int threads = 1;
};

struct SweepOptions {
  std::string scenario_path;
  std::vector<double> alphas;  // mapped to gamma = (alpha + 1) / 2
  std::vector<double> gammas;
  std::vector<std::size_t> levels;
  int seeds = 0;                // 0 keeps the scenario value
  int random_deployments = -1;  // < 0 keeps the scenario value
  std::string out_dir;
  int threads = 1;
};

int cmd_solve1d(const Solve1dOptions& opt);
int cmd_lloyd(const LloydOptions& opt);
int cmd_sweep(const SweepOptions& opt);

}  // namespace pdqcli
