// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "pdq/density.hpp"
#include "pdq/distortion.hpp"
#include "pdq/geometry.hpp"
#include "pdq/quantizer.hpp"

namespace pdq {

// Variant A shares one height across all points; variant B optimizes heights
// individually.
enum class LloydVariant { CommonHeight, IndividualHeights };

struct LloydConfig {
  LloydVariant variant = LloydVariant::IndividualHeights;
  int max_iters = 500;
  double rel_tol = 1e-8;       // stop when the relative improvement drops below this
  double armijo_c = 1e-4;      // sufficient-decrease constant
  double armijo_shrink = 0.5;  // backtracking factor
  int grid_resolution_x = 400;  // 2D quadrature grid
  int grid_resolution_y = 0;    // 0 means same as x
  double simpson_tol = 1e-10;   // 1D quadrature
  int threads = 1;

  void validate() const;
};

enum class LloydTermination { Converged, MaxIterations };

struct LloydReport {
  Quantizer quantizer;
  double distortion = 0.0;
  // trace[0] is the initial distortion; one more entry per iteration.
  // Non-increasing up to 1e-9 slack.
  std::vector<double> trace;
  int iterations = 0;
  LloydTermination termination = LloydTermination::Converged;
  int reseeds = 0;
  // Final per-point cell masses under the final partition.
  std::vector<double> cell_mass;
};

// Points i.i.d. uniform over the region; heights i.i.d. uniform in
// (0, diam(region) * g_numeric(gamma)]. Points closer than 1e-9 are nudged
// apart by 1e-6 * diam.
Quantizer random_deployment(const Region& region, std::size_t levels, double gamma,
                            std::mt19937_64& rng);

// Alternating optimization: (a) dominance partition of the current
// deployment; (b) on the fixed partition, one backtracked gradient step per
// point (exact centroid jump at gamma = 1) and exact convex height
// minimization (per point for variant B, shared for variant A). Terminates on
// relative improvement below rel_tol or after max_iters rounds. Empty cells
// are reseeded at the grid cell contributing most distortion.
LloydReport lloyd_run(const Quantizer& q0, const Region& region, const Density& density,
                      const DistortionParams& params, const LloydConfig& config);

struct SweepConfig {
  std::vector<double> gammas;
  std::vector<std::size_t> levels;
  int lloyd_seeds = 20;         // restarts per variant; best final distortion wins
  int random_deployments = 100; // baseline sample count
  std::uint64_t base_seed = 1;
  LloydConfig lloyd;
};

struct SweepRow {
  double alpha = 0.0;
  double gamma = 0.0;
  std::size_t levels = 0;
  double lloyd_a = 0.0;        // best of lloyd_seeds restarts
  double lloyd_b = 0.0;
  double lloyd_a_first = 0.0;  // first restart, single-run figure
  double lloyd_b_first = 0.0;
  double rd_mean = 0.0;
  double rd_min = 0.0;
  double rd_max = 0.0;
  // Closed-form columns, populated for 1D uniform scenarios (NaN otherwise):
  // optimal height (A/2N) g(gamma), its bound (A/2N)/sqrt(2 gamma - 1), and
  // the optimal distortion.
  double theory_height = 0.0;
  double theory_bound = 0.0;
  double theory_distortion = 0.0;
};

// Identifies one optimizer run within a sweep.
struct SweepRunInfo {
  double gamma = 0.0;
  std::size_t levels = 0;
  LloydVariant variant = LloydVariant::IndividualHeights;
  int seed_index = 0;
};

using SweepObserver = std::function<void(const SweepRunInfo&, const LloydReport&)>;

// One row per (gamma, levels) pair: best-of-seeds Lloyd-A and Lloyd-B plus
// mean/min/max distortion over random deployments. params.gamma is replaced
// row by row; params.beta is kept. The observer, when set, sees every
// optimizer run.
std::vector<SweepRow> sweep(const Region& region, const Density& density,
                            const DistortionParams& params, const SweepConfig& config,
                            const SweepObserver& observer = {});

}  // namespace pdq
