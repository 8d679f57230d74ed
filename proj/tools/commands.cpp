// SPDX-License-Identifier: Apache-2.0
#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <stdexcept>

#include <json.hpp>
#include <pdq/lloyd.hpp>
#include <pdq/oned.hpp>
#include <pdq/rng.hpp>

#include "artifacts.hpp"
#include "scenario.hpp"

namespace pdqcli {

namespace {

const char* variant_name(pdq::LloydVariant v) {
  return v == pdq::LloydVariant::CommonHeight ? "A" : "B";
}

pdq::LloydVariant parse_variant(const std::string& v) {
  if (v == "A") return pdq::LloydVariant::CommonHeight;
  if (v == "B") return pdq::LloydVariant::IndividualHeights;
  throw std::invalid_argument("variant must be \"A\" or \"B\", got \"" + v + "\"");
}

void print_values(const char* label, const std::vector<double>& values) {
  std::printf("%s", label);
  for (double v : values) std::printf(" %.17g", v);
  std::printf("\n");
}

pdq::Quantizer quantizer_from_optimum(const pdq::OneDimOptimum& optimum) {
  pdq::Quantizer q;
  for (double x : optimum.points) q.points.push_back({x, 0.0});
  q.heights.assign(optimum.points.size(), optimum.height);
  return q;
}

struct BestRun {
  pdq::LloydReport report;
  int seed_index = -1;
};

BestRun best_of_restarts(const Scenario& scenario, const pdq::LloydConfig& config, int seeds,
                         bool verbose) {
  BestRun best;
  best.report.distortion = std::numeric_limits<double>::infinity();
  for (int k = 0; k < seeds; ++k) {
    std::mt19937_64 rng(pdq::derive_seed(scenario.seed, static_cast<std::uint64_t>(k)));
    pdq::Quantizer q0 = pdq::random_deployment(scenario.region, scenario.levels,
                                               scenario.params.gamma, rng);
    if (config.variant == pdq::LloydVariant::CommonHeight) q0 = pdq::with_common_height(q0);
    pdq::LloydReport report =
        pdq::lloyd_run(q0, scenario.region, scenario.density, scenario.params, config);
    if (verbose) {
      std::printf("seed %2d: distortion %.17g after %d iterations (%s)\n", k, report.distortion,
                  report.iterations,
                  report.termination == pdq::LloydTermination::Converged ? "converged"
                                                                         : "max iterations");
    }
    if (report.distortion < best.report.distortion) {
      best.report = std::move(report);
      best.seed_index = k;
    }
  }
  return best;
}

}  // namespace

int cmd_solve1d(const Solve1dOptions& opt) {
  if (opt.gamma_set && opt.alpha_set)
    throw std::invalid_argument("pass only one of --gamma and --alpha");
  const double gamma = opt.alpha_set ? (opt.alpha + 1.0) / 2.0 : opt.gamma;

  const pdq::OneDimOptimum optimum = pdq::n_level_optimum(opt.levels, opt.length, gamma, opt.beta);
  const double cosine = pdq::max_elevation_cosine(optimum);

  if (opt.as_json) {
    nlohmann::json j;
    j["A"] = opt.length;
    j["N"] = opt.levels;
    j["gamma"] = gamma;
    j["beta"] = opt.beta;
    j["points"] = optimum.points;
    j["height"] = optimum.height;
    j["boundaries"] = optimum.boundaries;
    j["distortion"] = optimum.distortion;
    j["max_elevation_cosine"] = cosine;
    std::printf("%s\n", j.dump(2).c_str());
  } else {
    std::printf("N=%zu on [0, %.17g], gamma=%.17g, beta=%.17g\n", opt.levels, opt.length, gamma,
                opt.beta);
    print_values("points:    ", optimum.points);
    std::printf("height:     %.17g\n", optimum.height);
    print_values("boundaries:", optimum.boundaries);
    std::printf("distortion: %.17g\n", optimum.distortion);
    std::printf("max elevation cosine: %.17g\n", cosine);
  }

  if (!opt.out_path.empty()) {
    write_quantizer_json(opt.out_path, quantizer_from_optimum(optimum), 1, optimum.distortion);
    std::printf("wrote %s\n", opt.out_path.c_str());
  }
  return 0;
}

int cmd_lloyd(const LloydOptions& opt) {
  Scenario scenario = load_scenario(opt.scenario_path);
  pdq::LloydConfig config = scenario.lloyd;
  if (!opt.variant.empty()) config.variant = parse_variant(opt.variant);
  if (opt.seed_set) scenario.seed = opt.seed;
  config.threads = opt.threads;
  const int seeds = opt.seeds > 0 ? opt.seeds : scenario.seeds;

  std::printf("lloyd variant %s, N=%zu, gamma=%.17g, %d restart(s)\n", variant_name(config.variant),
              scenario.levels, scenario.params.gamma, seeds);
  BestRun best = best_of_restarts(scenario, config, seeds, true);
  std::printf("best: seed %d, distortion %.17g, %d reseed(s)\n", best.seed_index,
              best.report.distortion, best.report.reseeds);

  const std::string out_dir = !opt.out_dir.empty() ? opt.out_dir : scenario.output_dir;
  if (!out_dir.empty()) {
    write_run_artifacts(out_dir, best.report, scenario.region, scenario.density, scenario.params,
                        config);
    std::printf("wrote artifacts to %s\n", out_dir.c_str());
  }
  return 0;
}

int cmd_sweep(const SweepOptions& opt) {
  if (!opt.alphas.empty() && !opt.gammas.empty())
    throw std::invalid_argument("pass only one of --alphas and --gammas");

  Scenario scenario = load_scenario(opt.scenario_path);
  pdq::SweepConfig config;
  config.lloyd = scenario.lloyd;
  config.lloyd.threads = opt.threads;
  config.lloyd_seeds = opt.seeds > 0 ? opt.seeds : scenario.seeds;
  config.random_deployments =
      opt.random_deployments >= 0 ? opt.random_deployments : scenario.random_deployments;
  config.base_seed = scenario.seed;

  if (!opt.gammas.empty()) {
    config.gammas = opt.gammas;
  } else if (!opt.alphas.empty()) {
    for (double alpha : opt.alphas) config.gammas.push_back((alpha + 1.0) / 2.0);
  } else {
    config.gammas = {scenario.params.gamma};
  }
  config.levels = opt.levels.empty() ? std::vector<std::size_t>{scenario.levels} : opt.levels;

  const std::vector<pdq::SweepRow> rows =
      pdq::sweep(scenario.region, scenario.density, scenario.params, config);

  std::printf("%7s %7s %5s %14s %14s %14s %14s\n", "alpha", "gamma", "N", "lloydA", "lloydB",
              "rd_mean", "dstar");
  for (const auto& row : rows) {
    std::printf("%7.3f %7.3f %5zu %14.6g %14.6g %14.6g %14.6g\n", row.alpha, row.gamma, row.levels,
                row.lloyd_a, row.lloyd_b, row.rd_mean, row.theory_distortion);
  }

  const std::string out_dir = !opt.out_dir.empty() ? opt.out_dir : scenario.output_dir;
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    const std::string path = (std::filesystem::path(out_dir) / "sweep.csv").string();
    write_sweep_csv(path, rows);
    std::printf("wrote %s\n", path.c_str());
  }
  return 0;
}

}  // namespace pdqcli
