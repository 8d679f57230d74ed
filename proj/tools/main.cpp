// SPDX-License-Identifier: Apache-2.0
#include <cstdio>
#include <exception>
#include <stdexcept>

#include <CLI11.hpp>

#include "commands.hpp"

// Exit codes: 0 success, 1 internal failure, 2 bad usage or bad input.
int main(int argc, char** argv) {
  CLI::App app{"optimal elevated quantizers under power-law distortion"};
  app.require_subcommand(1);
  int threads = 1;
  app.add_option("--threads", threads, "worker threads for grid classification")
      ->envname("PDQ_THREADS")
      ->check(CLI::PositiveNumber);

  pdqcli::Solve1dOptions solve_opt;
  CLI::App* solve = app.add_subcommand("solve1d", "closed-form optimum on an interval");
  solve->add_option("--A", solve_opt.length, "interval length")->check(CLI::PositiveNumber);
  solve->add_option("--N", solve_opt.levels, "number of levels")->check(CLI::PositiveNumber);
  CLI::Option* gamma_opt = solve->add_option("--gamma", solve_opt.gamma, "distortion exponent");
  CLI::Option* alpha_opt =
      solve->add_option("--alpha", solve_opt.alpha, "path-loss exponent, gamma = (alpha+1)/2");
  solve->add_option("--beta", solve_opt.beta, "distortion scale")->check(CLI::PositiveNumber);
  solve->add_flag("--json", solve_opt.as_json, "print machine-readable JSON");
  solve->add_option("--out", solve_opt.out_path, "write the quantizer as JSON to this file");

  pdqcli::LloydOptions lloyd_opt;
  CLI::App* lloyd = app.add_subcommand("lloyd", "descent from random restarts on a scenario");
  lloyd->add_option("scenario", lloyd_opt.scenario_path, "scenario JSON file")->required();
  lloyd->add_option("--variant", lloyd_opt.variant, "A (common height) or B (individual)");
  lloyd->add_option("--seeds", lloyd_opt.seeds, "number of random restarts")
      ->check(CLI::PositiveNumber);
  CLI::Option* seed_opt = lloyd->add_option("--seed", lloyd_opt.seed, "base RNG seed");
  lloyd->add_option("--out", lloyd_opt.out_dir, "artifact directory");

  pdqcli::SweepOptions sweep_opt;
  CLI::App* sweep = app.add_subcommand("sweep", "compare optimizers across exponents and sizes");
  sweep->add_option("scenario", sweep_opt.scenario_path, "scenario JSON file")->required();
  sweep->add_option("--alphas", sweep_opt.alphas, "path-loss exponents, gamma = (alpha+1)/2");
  sweep->add_option("--gammas", sweep_opt.gammas, "distortion exponents");
  sweep->add_option("--Ns", sweep_opt.levels, "level counts");
  sweep->add_option("--seeds", sweep_opt.seeds, "restarts per optimizer run")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--rd", sweep_opt.random_deployments, "random-deployment baseline samples")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--out", sweep_opt.out_dir, "artifact directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  solve_opt.gamma_set = gamma_opt->count() > 0;
  solve_opt.alpha_set = alpha_opt->count() > 0;
  lloyd_opt.seed_set = seed_opt->count() > 0;
  lloyd_opt.threads = threads;
  sweep_opt.threads = threads;

  try {
    if (solve->parsed()) return pdqcli::cmd_solve1d(solve_opt);
    if (lloyd->parsed()) return pdqcli::cmd_lloyd(lloyd_opt);
    if (sweep->parsed()) return pdqcli::cmd_sweep(sweep_opt);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::runtime_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
