// SPDX-License-Identifier: Apache-2.0
#include "pdq/lloyd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "pdq/integrate.hpp"
#include "pdq/mobius.hpp"
#include "pdq/oned.hpp"
#include "pdq/quadrature.hpp"
#include "pdq/rng.hpp"

namespace pdq {

namespace {

constexpr double kCollisionDist2 = 1e-18;  // pairwise distance below 1e-9

void jitter_collisions(Quantizer& q, const Region& region) {
  const double step = 1e-6 * region.diameter();
  for (std::size_t i = 1; i < q.size(); ++i) {
    for (int attempt = 1; attempt <= 64; ++attempt) {
      bool collides = false;
      for (std::size_t j = 0; j < i; ++j) {
        if (squared_distance(q.points[i], q.points[j]) < kCollisionDist2) {
          collides = true;
          break;
        }
      }
      if (!collides) break;
      Point offset;
      if (region.dim() == 1) {
        offset.x = step * attempt * (attempt % 2 == 1 ? 1.0 : -1.0);
      } else {
        const double angle = 2.39996322972865332 * attempt + 0.7 * static_cast<double>(i);
        offset = {step * attempt * std::cos(angle), step * attempt * std::sin(angle)};
      }
      q.points[i] = region.clamp(q.points[i] + offset);
    }
  }
}

// ---------------------------------------------------------------------------
// Convex height minimization. The fixed-partition objective restricted to one
// height is J(h) = sum_c m_c beta (r_c^2 + h^2)^gamma / h, strictly convex in
// h > 0; its stationarity condition is
//   psi(h) = sum_c m_c (r_c^2 + h^2)^(gamma-1) ((2 gamma - 1) h^2 - r_c^2) = 0
// with psi < 0 left of the minimizer and > 0 right of it. psi is solved by
// Newton steps safeguarded by bisection inside [lo, hi], where psi(lo) < 0
// and hi = sqrt(max r^2 / (2 gamma - 1)) has psi(hi) >= 0 termwise.

struct MassR2 {
  double m = 0.0;
  double r2 = 0.0;
};

struct HeightSolveContext {
  const MassR2* cells = nullptr;
  std::size_t count = 0;
  double gamma = 1.0;
  PowExp pow_gamma{1.0};
  PowExp pow_gm1{0.0};
  PowExp pow_gm2{-1.0};
};

double height_objective(const HeightSolveContext& ctx, double h) {
  const double h2 = h * h;
  double sum = 0.0;
  for (std::size_t i = 0; i < ctx.count; ++i)
    sum += ctx.cells[i].m * ctx.pow_gamma(ctx.cells[i].r2 + h2);
  return sum / h;
}

void psi_and_derivative(const HeightSolveContext& ctx, double h, double& psi, double& dpsi) {
  const double h2 = h * h;
  const double c = 2.0 * ctx.gamma - 1.0;
  psi = 0.0;
  dpsi = 0.0;
  for (std::size_t i = 0; i < ctx.count; ++i) {
    const double r2 = ctx.cells[i].r2;
    const double m = ctx.cells[i].m;
    const double t = r2 + h2;
    const double tg1 = ctx.pow_gm1(t);
    const double lin = c * h2 - r2;
    psi += m * tg1 * lin;
    dpsi += m * (2.0 * h * (ctx.gamma - 1.0) * ctx.pow_gm2(t) * lin + 2.0 * c * h * tg1);
  }
}

double minimize_height(const HeightSolveContext& ctx, double h_init) {
  double maxr2 = 0.0;
  for (std::size_t i = 0; i < ctx.count; ++i) maxr2 = std::max(maxr2, ctx.cells[i].r2);
  if (!(maxr2 > 0.0)) return h_init;

  double hi = std::sqrt(maxr2 / (2.0 * ctx.gamma - 1.0));
  double lo = 1e-12 * hi;
  double h = std::clamp(h_init, lo, hi);
  for (int iter = 0; iter < 80; ++iter) {
    double psi;
    double dpsi;
    psi_and_derivative(ctx, h, psi, dpsi);
    if (psi < 0.0) {
      lo = h;
    } else {
      hi = h;
    }
    double next = dpsi > 0.0 ? h - psi / dpsi : h;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::fabs(next - h) <= 1e-13 * next) {
      h = next;
      break;
    }
    h = next;
  }
  return h;
}

// ---------------------------------------------------------------------------
// Two-dimensional driver: midpoint quadrature over a fixed grid whose owners
// are refreshed each round.

struct GridDriver {
  const Region& region;
  const Density& density;
  const DistortionParams& params;
  const LloydConfig& config;

  GridPartition grid;           // mass fixed; owners refreshed per round
  std::vector<double> xs, ys;   // cell center coordinates

  PowExp pow_gamma;
  PowExp pow_gm1;
  PowExp pow_gm2;

  // Per-point accumulators for the current partition.
  std::vector<double> mass, swx, swy, contrib;
  std::vector<std::vector<std::uint32_t>> owned;
  double total = 0.0;

  GridDriver(const Quantizer& q0, const Region& region_, const Density& density_,
             const DistortionParams& params_, const LloydConfig& config_)
      : region(region_),
        density(density_),
        params(params_),
        config(config_),
        pow_gamma(params_.gamma),
        pow_gm1(params_.gamma - 1.0),
        pow_gm2(params_.gamma - 2.0) {
    grid = grid_partition(q0, region, density, params, config.grid_resolution_x,
                          config.grid_resolution_y, config.threads);
    xs.resize(grid.nx);
    ys.resize(grid.ny);
    for (int ix = 0; ix < grid.nx; ++ix) xs[ix] = (ix + 0.5) * grid.dx;
    for (int iy = 0; iy < grid.ny; ++iy) ys[iy] = region.dim() == 2 ? (iy + 0.5) * grid.dy : 0.0;
  }

  Point center_of(std::uint32_t idx) const {
    return {xs[idx % static_cast<std::uint32_t>(grid.nx)],
            ys[idx / static_cast<std::uint32_t>(grid.nx)]};
  }

  void retessellate(const Quantizer& q) {
    std::vector<CellWeights> w(q.size());
    for (std::size_t n = 0; n < q.size(); ++n)
      w[n] = weights_from_height(q.heights[n], params.gamma);
    const std::size_t cells = grid.cell_count();
    for (std::size_t idx = 0; idx < cells; ++idx) {
      const Point omega{xs[idx % static_cast<std::size_t>(grid.nx)],
                        ys[idx / static_cast<std::size_t>(grid.nx)]};
      std::size_t best = 0;
      double best_value = w[0].a * squared_distance(omega, q.points[0]) + w[0].b;
      for (std::size_t n = 1; n < q.size(); ++n) {
        const double value = w[n].a * squared_distance(omega, q.points[n]) + w[n].b;
        if (value < best_value) {
          best_value = value;
          best = n;
        }
      }
      grid.owner[idx] = static_cast<std::int32_t>(best);
    }
  }

  // One pass: per-point mass, first moments, distortion contributions and
  // owned-cell lists.
  void collect(const Quantizer& q) {
    const std::size_t count = q.size();
    mass.assign(count, 0.0);
    swx.assign(count, 0.0);
    swy.assign(count, 0.0);
    contrib.assign(count, 0.0);
    owned.assign(count, {});
    const std::size_t cells = grid.cell_count();
    for (std::size_t idx = 0; idx < cells; ++idx) {
      const auto n = static_cast<std::size_t>(grid.owner[idx]);
      const double m = grid.mass[idx];
      const Point omega = center_of(static_cast<std::uint32_t>(idx));
      mass[n] += m;
      swx[n] += m * omega.x;
      swy[n] += m * omega.y;
      contrib[n] += m * pow_gamma(squared_distance(omega, q.points[n]) +
                                  q.heights[n] * q.heights[n]);
      owned[n].push_back(static_cast<std::uint32_t>(idx));
    }
    total = 0.0;
    for (std::size_t n = 0; n < count; ++n) {
      contrib[n] *= params.beta / q.heights[n];
      total += contrib[n];
    }
  }

  // Fixed-partition objective of point n at candidate position p.
  double point_objective(const Quantizer& q, std::size_t n, const Point& p) const {
    const double h2 = q.heights[n] * q.heights[n];
    double sum = 0.0;
    for (std::uint32_t idx : owned[n])
      sum += grid.mass[idx] * pow_gamma(squared_distance(center_of(idx), p) + h2);
    return sum * params.beta / q.heights[n];
  }

  // Relocate every empty point: claim the grid cell with the largest residual
  // contribution, undercut the local distortion with the point's height so it
  // wins there, then fold the placed point into the residual before choosing
  // the next target. Sequential folding spreads simultaneous reseeds instead
  // of piling them onto a single hot spot.
  void reseed_empty(Quantizer& q, const std::vector<std::size_t>& empty) {
    const std::size_t cells = grid.cell_count();
    std::vector<double> resid(cells);
    std::vector<char> claimed(cells, 0);
    for (std::size_t idx = 0; idx < cells; ++idx) {
      const auto n = static_cast<std::size_t>(grid.owner[idx]);
      resid[idx] = params.beta *
                   pow_gamma(squared_distance(center_of(static_cast<std::uint32_t>(idx)),
                                              q.points[n]) +
                             q.heights[n] * q.heights[n]) /
                   q.heights[n];
    }
    for (std::size_t n : empty) {
      std::size_t best = cells;
      double best_value = 0.0;
      for (std::size_t idx = 0; idx < cells; ++idx) {
        if (claimed[idx]) continue;
        const double value = grid.mass[idx] * resid[idx];
        if (best == cells || value > best_value) {
          best = idx;
          best_value = value;
        }
      }
      if (best == cells) break;
      claimed[best] = 1;
      const Point target = center_of(static_cast<std::uint32_t>(best));
      q.points[n] = target;
      if (config.variant == LloydVariant::IndividualHeights && resid[best] > 0.0) {
        // A point parked too high is dominated everywhere no matter where it
        // moves; the shared-height variant keeps heights equal instead.
        const double cap =
            std::pow(resid[best] / params.beta, 1.0 / (2.0 * params.gamma - 1.0));
        q.heights[n] = std::min(q.heights[n], 0.5 * cap);
      }
      const double h = q.heights[n];
      for (std::size_t idx = 0; idx < cells; ++idx) {
        const double d =
            params.beta *
            pow_gamma(squared_distance(center_of(static_cast<std::uint32_t>(idx)), target) +
                      h * h) /
            h;
        resid[idx] = std::min(resid[idx], d);
      }
    }
  }

  void update_points(Quantizer& q) {
    const std::size_t count = q.size();
    for (std::size_t n = 0; n < count; ++n) {
      if (!(mass[n] > 0.0)) continue;
      if (pow_gamma.exponent() == 1.0) {
        q.points[n] = region.clamp({swx[n] / mass[n], swy[n] / mass[n]});
        continue;
      }
      // Backtracked gradient step with the Armijo condition.
      const double h = q.heights[n];
      const double h2 = h * h;
      Point grad{};
      double maxr2 = 0.0;
      for (std::uint32_t idx : owned[n]) {
        const Point omega = center_of(idx);
        const double r2 = squared_distance(omega, q.points[n]);
        maxr2 = std::max(maxr2, r2);
        grad = grad + (grid.mass[idx] * pow_gm1(r2 + h2)) * (q.points[n] - omega);
      }
      grad = (2.0 * params.gamma * params.beta / h) * grad;
      const double gn2 = squared_norm(grad);
      if (!(gn2 > 0.0) || !(maxr2 > 0.0)) continue;
      const double diam = 2.0 * std::sqrt(maxr2);
      const double j0 = contrib[n];
      double step = diam / std::sqrt(gn2);
      for (int backtrack = 0; backtrack < 60; ++backtrack) {
        const Point candidate = region.clamp(q.points[n] - step * grad);
        const double j = point_objective(q, n, candidate);
        if (j <= j0 - config.armijo_c * step * gn2) {
          q.points[n] = candidate;
          break;
        }
        step *= config.armijo_shrink;
        if (step * std::sqrt(gn2) < 1e-14 * diam) break;
      }
    }
  }

  void update_heights(Quantizer& q) {
    const std::size_t count = q.size();
    // Mass and squared distance per owned cell, grouped by owner, with the
    // (possibly just moved) points.
    std::vector<MassR2> entries;
    entries.reserve(grid.cell_count());
    std::vector<std::size_t> offset(count + 1, 0);
    for (std::size_t n = 0; n < count; ++n) {
      offset[n] = entries.size();
      for (std::uint32_t idx : owned[n])
        entries.push_back({grid.mass[idx], squared_distance(center_of(idx), q.points[n])});
    }
    offset[count] = entries.size();

    HeightSolveContext ctx;
    ctx.gamma = params.gamma;
    ctx.pow_gamma = pow_gamma;
    ctx.pow_gm1 = pow_gm1;
    ctx.pow_gm2 = pow_gm2;

    if (config.variant == LloydVariant::CommonHeight) {
      ctx.cells = entries.data();
      ctx.count = entries.size();
      double h_new;
      if (params.gamma == 1.0) {
        double smr2 = 0.0;
        double total_mass = 0.0;
        for (const auto& e : entries) {
          smr2 += e.m * e.r2;
          total_mass += e.m;
        }
        if (!(smr2 > 0.0)) return;
        h_new = std::sqrt(smr2 / total_mass);
      } else {
        h_new = minimize_height(ctx, q.heights[0]);
        if (height_objective(ctx, h_new) > height_objective(ctx, q.heights[0])) return;
      }
      for (double& h : q.heights) h = h_new;
      return;
    }

    for (std::size_t n = 0; n < count; ++n) {
      if (!(mass[n] > 0.0)) continue;
      ctx.cells = entries.data() + offset[n];
      ctx.count = offset[n + 1] - offset[n];
      if (params.gamma == 1.0) {
        double smr2 = 0.0;
        for (std::size_t i = 0; i < ctx.count; ++i) smr2 += ctx.cells[i].m * ctx.cells[i].r2;
        if (smr2 > 0.0) q.heights[n] = std::sqrt(smr2 / mass[n]);
      } else {
        const double h_new = minimize_height(ctx, q.heights[n]);
        if (height_objective(ctx, h_new) <= height_objective(ctx, q.heights[n]))
          q.heights[n] = h_new;
      }
    }
  }
};

// ---------------------------------------------------------------------------
// One-dimensional driver: exact dominance intervals, adaptive Simpson.

struct LineDriver {
  const Region& region;
  const Density& density;
  const DistortionParams& params;
  const LloydConfig& config;

  PowExp pow_gamma;
  PowExp pow_gm1;
  PowExp pow_gm2;

  Partition1D partition;
  std::vector<double> mass, sw, contrib;
  double total = 0.0;

  LineDriver(const Region& region_, const Density& density_, const DistortionParams& params_,
             const LloydConfig& config_)
      : region(region_),
        density(density_),
        params(params_),
        config(config_),
        pow_gamma(params_.gamma),
        pow_gm1(params_.gamma - 1.0),
        pow_gm2(params_.gamma - 2.0) {}

  void retessellate(const Quantizer& q) { partition = cells_1d(q, region, params); }

  void collect(const Quantizer& q) {
    const std::size_t count = q.size();
    mass.assign(count, 0.0);
    sw.assign(count, 0.0);
    contrib.assign(count, 0.0);
    total = 0.0;
    for (std::size_t n = 0; n < count; ++n) {
      const double x = q.points[n].x;
      const double h2 = q.heights[n] * q.heights[n];
      for (const Interval& cell : partition.cells[n]) {
        mass[n] += adaptive_simpson([&](double w) { return density({w, 0.0}); }, cell.lo, cell.hi,
                                    config.simpson_tol);
        sw[n] += adaptive_simpson([&](double w) { return w * density({w, 0.0}); }, cell.lo,
                                  cell.hi, config.simpson_tol);
        contrib[n] += adaptive_simpson(
            [&](double w) {
              const double d = w - x;
              return pow_gamma(d * d + h2) * density({w, 0.0});
            },
            cell.lo, cell.hi, config.simpson_tol);
      }
      contrib[n] *= params.beta / q.heights[n];
      total += contrib[n];
    }
  }

  double point_objective(const Quantizer& q, std::size_t n, double x) const {
    const double h2 = q.heights[n] * q.heights[n];
    double sum = 0.0;
    for (const Interval& cell : partition.cells[n]) {
      sum += adaptive_simpson(
          [&](double w) {
            const double d = w - x;
            return pow_gamma(d * d + h2) * density({w, 0.0});
          },
          cell.lo, cell.hi, config.simpson_tol);
    }
    return sum * params.beta / q.heights[n];
  }

  double cell_msd(std::size_t n, double x) const {
    double sum = 0.0;
    for (const Interval& cell : partition.cells[n]) {
      sum += adaptive_simpson(
          [&](double w) { return (w - x) * (w - x) * density({w, 0.0}); }, cell.lo, cell.hi,
          config.simpson_tol);
    }
    return sum;
  }

  double psi(std::size_t n, double x, double h) const {
    const double h2 = h * h;
    const double c = 2.0 * params.gamma - 1.0;
    double sum = 0.0;
    for (const Interval& cell : partition.cells[n]) {
      sum += adaptive_simpson(
          [&](double w) {
            const double r2 = (w - x) * (w - x);
            return pow_gm1(r2 + h2) * (c * h2 - r2) * density({w, 0.0});
          },
          cell.lo, cell.hi, config.simpson_tol);
    }
    return sum;
  }

  double height_objective(std::size_t n, double x, double h) const {
    const double h2 = h * h;
    double sum = 0.0;
    for (const Interval& cell : partition.cells[n]) {
      sum += adaptive_simpson(
          [&](double w) {
            const double d = w - x;
            return pow_gamma(d * d + h2) * density({w, 0.0});
          },
          cell.lo, cell.hi, config.simpson_tol);
    }
    return sum * params.beta / h;
  }

  double max_r2(std::size_t n, double x) const {
    double maxr2 = 0.0;
    for (const Interval& cell : partition.cells[n]) {
      maxr2 = std::max(maxr2, (cell.lo - x) * (cell.lo - x));
      maxr2 = std::max(maxr2, (cell.hi - x) * (cell.hi - x));
    }
    return maxr2;
  }

  // Bisection on psi; cheap at 1D problem sizes and free of derivative
  // integrals.
  double minimize_height_1d(std::size_t n, double x, double h_init) const {
    const double maxr2 = max_r2(n, x);
    if (!(maxr2 > 0.0)) return h_init;
    double hi = std::sqrt(maxr2 / (2.0 * params.gamma - 1.0));
    double lo = 1e-12 * hi;
    double h = std::clamp(h_init, lo, hi);
    for (int iter = 0; iter < 100; ++iter) {
      if (psi(n, x, h) < 0.0) {
        lo = h;
      } else {
        hi = h;
      }
      const double next = 0.5 * (lo + hi);
      if (std::fabs(next - h) <= 1e-13 * next && iter > 3) break;
      h = next;
      if (hi - lo <= 1e-14 * hi) break;
    }
    return 0.5 * (lo + hi);
  }

  // One-dimensional analogue of the grid reseed: probe the interval, claim
  // the probe with the highest residual distortion density, fold the placed
  // point into the residual, repeat.
  void reseed_empty(Quantizer& q, const std::vector<std::size_t>& empty) {
    constexpr int kProbes = 1024;
    const double length = region.width();
    std::vector<double> resid(kProbes);
    std::vector<char> claimed(kProbes, 0);
    for (int i = 0; i < kProbes; ++i) {
      const double w = (i + 0.5) * length / kProbes;
      double best_d = std::numeric_limits<double>::infinity();
      for (std::size_t n = 0; n < q.size(); ++n) {
        const double t = (w - q.points[n].x) * (w - q.points[n].x) +
                         q.heights[n] * q.heights[n];
        best_d = std::min(best_d, params.beta * pow_gamma(t) / q.heights[n]);
      }
      resid[i] = best_d;
    }
    for (std::size_t n : empty) {
      int best = -1;
      double best_value = 0.0;
      for (int i = 0; i < kProbes; ++i) {
        if (claimed[i]) continue;
        const double w = (i + 0.5) * length / kProbes;
        const double value = resid[i] * density({w, 0.0});
        if (best < 0 || value > best_value) {
          best = i;
          best_value = value;
        }
      }
      if (best < 0) break;
      claimed[best] = 1;
      const double x = (best + 0.5) * length / kProbes;
      q.points[n] = {x, 0.0};
      if (config.variant == LloydVariant::IndividualHeights && resid[best] > 0.0) {
        const double cap =
            std::pow(resid[best] / params.beta, 1.0 / (2.0 * params.gamma - 1.0));
        q.heights[n] = std::min(q.heights[n], 0.5 * cap);
      }
      const double h = q.heights[n];
      for (int i = 0; i < kProbes; ++i) {
        const double w = (i + 0.5) * length / kProbes;
        const double d = params.beta * pow_gamma((w - x) * (w - x) + h * h) / h;
        resid[i] = std::min(resid[i], d);
      }
    }
  }

  void update_points(Quantizer& q) {
    for (std::size_t n = 0; n < q.size(); ++n) {
      if (!(mass[n] > 0.0)) continue;
      if (params.gamma == 1.0) {
        q.points[n] = region.clamp({sw[n] / mass[n], 0.0});
        continue;
      }
      const double x = q.points[n].x;
      const double h = q.heights[n];
      const double h2 = h * h;
      double grad = 0.0;
      for (const Interval& cell : partition.cells[n]) {
        grad += adaptive_simpson(
            [&](double w) {
              const double d = x - w;
              return d * pow_gm1(d * d + h2) * density({w, 0.0});
            },
            cell.lo, cell.hi, config.simpson_tol);
      }
      grad *= 2.0 * params.gamma * params.beta / h;
      const double gn2 = grad * grad;
      const double maxr2 = max_r2(n, x);
      if (!(gn2 > 0.0) || !(maxr2 > 0.0)) continue;
      const double diam = 2.0 * std::sqrt(maxr2);
      const double j0 = contrib[n];
      double step = diam / std::fabs(grad);
      for (int backtrack = 0; backtrack < 60; ++backtrack) {
        const double candidate = std::clamp(x - step * grad, 0.0, region.width());
        const double j = point_objective(q, n, candidate);
        if (j <= j0 - config.armijo_c * step * gn2) {
          q.points[n].x = candidate;
          break;
        }
        step *= config.armijo_shrink;
        if (step * std::fabs(grad) < 1e-14 * diam) break;
      }
    }
  }

  void update_heights(Quantizer& q) {
    const std::size_t count = q.size();
    if (config.variant == LloydVariant::CommonHeight) {
      double h_new;
      const double h_old = q.heights[0];
      if (params.gamma == 1.0) {
        double smr2 = 0.0;
        double total_mass = 0.0;
        for (std::size_t n = 0; n < count; ++n) {
          if (!(mass[n] > 0.0)) continue;
          smr2 += cell_msd(n, q.points[n].x);
          total_mass += mass[n];
        }
        if (!(smr2 > 0.0)) return;
        h_new = std::sqrt(smr2 / total_mass);
      } else {
        // Shared psi is the sum of the per-cell ones; bisection again.
        double maxr2 = 0.0;
        for (std::size_t n = 0; n < count; ++n)
          if (mass[n] > 0.0) maxr2 = std::max(maxr2, max_r2(n, q.points[n].x));
        if (!(maxr2 > 0.0)) return;
        double hi = std::sqrt(maxr2 / (2.0 * params.gamma - 1.0));
        double lo = 1e-12 * hi;
        double h = std::clamp(h_old, lo, hi);
        for (int iter = 0; iter < 100; ++iter) {
          double value = 0.0;
          for (std::size_t n = 0; n < count; ++n)
            if (mass[n] > 0.0) value += psi(n, q.points[n].x, h);
          if (value < 0.0) {
            lo = h;
          } else {
            hi = h;
          }
          h = 0.5 * (lo + hi);
          if (hi - lo <= 1e-14 * hi) break;
        }
        h_new = h;
        double j_old = 0.0;
        double j_new = 0.0;
        for (std::size_t n = 0; n < count; ++n) {
          if (!(mass[n] > 0.0)) continue;
          j_old += height_objective(n, q.points[n].x, h_old);
          j_new += height_objective(n, q.points[n].x, h_new);
        }
        if (j_new > j_old) return;
      }
      for (double& h : q.heights) h = h_new;
      return;
    }

    for (std::size_t n = 0; n < count; ++n) {
      if (!(mass[n] > 0.0)) continue;
      const double x = q.points[n].x;
      if (params.gamma == 1.0) {
        const double smr2 = cell_msd(n, x);
        if (smr2 > 0.0) q.heights[n] = std::sqrt(smr2 / mass[n]);
      } else {
        const double h_new = minimize_height_1d(n, x, q.heights[n]);
        if (height_objective(n, x, h_new) <= height_objective(n, x, q.heights[n]))
          q.heights[n] = h_new;
      }
    }
  }
};

template <class Driver>
LloydReport run_driver(Driver& driver, Quantizer q, const Region& region,
                       const LloydConfig& config) {
  LloydReport report;
  report.termination = LloydTermination::MaxIterations;

  double previous = std::numeric_limits<double>::infinity();
  for (int iter = 0;; ++iter) {
    driver.retessellate(q);
    driver.collect(q);

    // Escape empty cells: relocate every empty point onto the residual
    // distortion. The moved points owned nothing, so re-tessellation cannot
    // increase the objective.
    for (int round = 0; round < 4; ++round) {
      std::vector<std::size_t> empty;
      for (std::size_t n = 0; n < q.size(); ++n)
        if (!(driver.mass[n] > 0.0)) empty.push_back(n);
      if (empty.empty()) break;
      driver.reseed_empty(q, empty);
      report.reseeds += static_cast<int>(empty.size());
      jitter_collisions(q, region);
      driver.retessellate(q);
      driver.collect(q);
    }

    report.trace.push_back(driver.total);
    report.iterations = iter;
    if (iter > 0 && previous - driver.total <= config.rel_tol * previous) {
      report.termination = LloydTermination::Converged;
      break;
    }
    if (iter >= config.max_iters) {
      report.termination = LloydTermination::MaxIterations;
      break;
    }
    previous = driver.total;

    driver.update_points(q);
    driver.update_heights(q);
    jitter_collisions(q, region);
  }

  report.quantizer = std::move(q);
  report.distortion = driver.total;
  report.cell_mass = driver.mass;
  return report;
}

}  // namespace

void LloydConfig::validate() const {
  if (max_iters < 1) throw std::invalid_argument("LloydConfig: max_iters must be >= 1");
  if (!(rel_tol > 0.0)) throw std::invalid_argument("LloydConfig: rel_tol must be positive");
  if (!(armijo_c > 0.0) || !(armijo_c < 1.0))
    throw std::invalid_argument("LloydConfig: armijo_c must be in (0, 1)");
  if (!(armijo_shrink > 0.0) || !(armijo_shrink < 1.0))
    throw std::invalid_argument("LloydConfig: armijo_shrink must be in (0, 1)");
  if (grid_resolution_x < 2) throw std::invalid_argument("LloydConfig: grid resolution must be >= 2");
  if (!(simpson_tol > 0.0)) throw std::invalid_argument("LloydConfig: simpson_tol must be positive");
  if (threads < 1) throw std::invalid_argument("LloydConfig: threads must be >= 1");
}

Quantizer random_deployment(const Region& region, std::size_t levels, double gamma,
                            std::mt19937_64& rng) {
  if (levels < 1) throw std::invalid_argument("random_deployment: levels must be >= 1");
  const double height_cap = region.diameter() * g_numeric(gamma);
  Quantizer q;
  q.points.resize(levels);
  q.heights.resize(levels);
  for (std::size_t n = 0; n < levels; ++n) {
    q.points[n].x = uniform_in(rng, 0.0, region.width());
    q.points[n].y = region.dim() == 2 ? uniform_in(rng, 0.0, region.height()) : 0.0;
    // 1 - u maps [0, 1) onto (0, 1], keeping the height positive.
    q.heights[n] = height_cap * (1.0 - uniform01(rng));
  }
  jitter_collisions(q, region);
  return q;
}

LloydReport lloyd_run(const Quantizer& q0, const Region& region, const Density& density,
                      const DistortionParams& params, const LloydConfig& config) {
  params.validate();
  config.validate();
  validate(q0, region);
  if (config.variant == LloydVariant::CommonHeight && !has_common_height(q0))
    throw std::invalid_argument("lloyd_run: variant A requires a common initial height");

  Quantizer q = q0;
  jitter_collisions(q, region);

  if (region.dim() == 1) {
    LineDriver driver(region, density, params, config);
    return run_driver(driver, std::move(q), region, config);
  }
  GridDriver driver(q, region, density, params, config);
  return run_driver(driver, std::move(q), region, config);
}

std::vector<SweepRow> sweep(const Region& region, const Density& density,
                            const DistortionParams& params, const SweepConfig& config,
                            const SweepObserver& observer) {
  if (config.gammas.empty() || config.levels.empty())
    throw std::invalid_argument("sweep: gamma and level lists must be nonempty");
  if (config.lloyd_seeds < 1) throw std::invalid_argument("sweep: lloyd_seeds must be >= 1");
  if (config.random_deployments < 1)
    throw std::invalid_argument("sweep: random_deployments must be >= 1");

  std::vector<SweepRow> rows;
  std::uint64_t stream = 0;
  const double nan = std::numeric_limits<double>::quiet_NaN();

  for (double gamma : config.gammas) {
    for (std::size_t levels : config.levels) {
      DistortionParams row_params = params;
      row_params.gamma = gamma;

      SweepRow row;
      row.gamma = gamma;
      row.alpha = 2.0 * gamma - 1.0;
      row.levels = levels;
      row.theory_height = nan;
      row.theory_bound = nan;
      row.theory_distortion = nan;
      if (region.dim() == 1 && density.is_uniform()) {
        const auto opt = n_level_optimum(levels, region.width(), gamma, params.beta);
        row.theory_height = opt.height;
        row.theory_bound =
            region.width() / (2.0 * static_cast<double>(levels)) / std::sqrt(2.0 * gamma - 1.0);
        row.theory_distortion = opt.distortion;
      }

      for (LloydVariant variant : {LloydVariant::CommonHeight, LloydVariant::IndividualHeights}) {
        LloydConfig lloyd_config = config.lloyd;
        lloyd_config.variant = variant;
        double best = std::numeric_limits<double>::infinity();
        double first = nan;
        for (int s = 0; s < config.lloyd_seeds; ++s) {
          std::mt19937_64 rng(derive_seed(config.base_seed, stream++));
          Quantizer q0 = random_deployment(region, levels, gamma, rng);
          if (variant == LloydVariant::CommonHeight) q0 = with_common_height(q0);
          const LloydReport report = lloyd_run(q0, region, density, row_params, lloyd_config);
          if (observer) observer({gamma, levels, variant, s}, report);
          if (s == 0) first = report.distortion;
          best = std::min(best, report.distortion);
        }
        if (variant == LloydVariant::CommonHeight) {
          row.lloyd_a = best;
          row.lloyd_a_first = first;
        } else {
          row.lloyd_b = best;
          row.lloyd_b_first = first;
        }
      }

      double sum = 0.0;
      double lo = std::numeric_limits<double>::infinity();
      double hi = 0.0;
      for (int s = 0; s < config.random_deployments; ++s) {
        std::mt19937_64 rng(derive_seed(config.base_seed, stream++));
        const Quantizer q = random_deployment(region, levels, gamma, rng);
        double value;
        if (region.dim() == 1) {
          const auto partition = cells_1d(q, region, row_params);
          value = average_distortion(q, density, row_params, partition, config.lloyd.simpson_tol)
                      .total;
        } else {
          const auto grid =
              grid_partition(q, region, density, row_params, config.lloyd.grid_resolution_x,
                             config.lloyd.grid_resolution_y, config.lloyd.threads);
          value = average_distortion(q, row_params, grid).total;
        }
        sum += value;
        lo = std::min(lo, value);
        hi = std::max(hi, value);
      }
      row.rd_mean = sum / config.random_deployments;
      row.rd_min = lo;
      row.rd_max = hi;
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace pdq
