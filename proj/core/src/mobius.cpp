// SPDX-License-Identifier: Apache-2.0
#include "pdq/mobius.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace pdq {

namespace {

bool heights_equal(double h_n, double h_m) {
  return std::fabs(h_n - h_m) <= kEqualHeightRelTol * std::max(h_n, h_m);
}

std::vector<CellWeights> all_weights(const Quantizer& q, double gamma) {
  std::vector<CellWeights> w;
  w.reserve(q.size());
  for (double h : q.heights) w.push_back(weights_from_height(h, gamma));
  return w;
}

std::size_t argmin_weighted(const Point& omega, const std::vector<Point>& points,
                            const std::vector<CellWeights>& w) {
  std::size_t best = 0;
  double best_value = w[0].a * squared_distance(omega, points[0]) + w[0].b;
  for (std::size_t n = 1; n < points.size(); ++n) {
    const double value = w[n].a * squared_distance(omega, points[n]) + w[n].b;
    if (value < best_value) {
      best_value = value;
      best = n;
    }
  }
  return best;
}

using IntervalList = std::vector<Interval>;

IntervalList intersect_sorted(const IntervalList& a, const IntervalList& b) {
  IntervalList out;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    const double lo = std::max(a[i].lo, b[j].lo);
    const double hi = std::min(a[i].hi, b[j].hi);
    if (hi > lo) out.push_back({lo, hi});
    if (a[i].hi < b[j].hi) {
      ++i;
    } else {
      ++j;
    }
  }
  return out;
}

// Dominance set restricted to the segment [0, length] of the x axis.
IntervalList restrict_to_segment(const DominanceRegion& reg, double length) {
  IntervalList out;
  switch (reg.kind) {
    case DominanceKind::Halfspace: {
      if (reg.normal.x > 0.0) {
        const double hi = std::min(length, reg.center.x);
        if (hi > 0.0) out.push_back({0.0, hi});
      } else {
        const double lo = std::max(0.0, reg.center.x);
        if (lo < length) out.push_back({lo, length});
      }
      break;
    }
    case DominanceKind::Ball: {
      const double r = std::sqrt(std::max(0.0, reg.radius2));
      const double lo = std::max(0.0, reg.center.x - r);
      const double hi = std::min(length, reg.center.x + r);
      if (hi > lo) out.push_back({lo, hi});
      break;
    }
    case DominanceKind::BallComplement: {
      const double r = std::sqrt(std::max(0.0, reg.radius2));
      const double left_hi = std::min(length, reg.center.x - r);
      if (left_hi > 0.0) out.push_back({0.0, left_hi});
      const double right_lo = std::max(0.0, reg.center.x + r);
      if (right_lo < length) out.push_back({right_lo, length});
      break;
    }
  }
  return out;
}

}  // namespace

double parameter_ratio(double h_n, double h_m, double gamma) {
  if (!(h_n > 0.0) || !(h_m > 0.0))
    throw std::domain_error("parameter_ratio: heights must be positive");
  if (!(gamma >= 1.0)) throw std::invalid_argument("parameter_ratio: gamma must be >= 1");
  return std::pow(h_n / h_m, 1.0 / gamma);
}

DominanceRegion dominance_region(const Point& p_n, double h_n, const Point& p_m, double h_m,
                                 double gamma) {
  if (!(h_n > 0.0) || !(h_m > 0.0))
    throw std::domain_error("dominance_region: heights must be positive");
  if (!(gamma >= 1.0)) throw std::invalid_argument("dominance_region: gamma must be >= 1");

  const double sep2 = squared_distance(p_n, p_m);
  if (heights_equal(h_n, h_m)) {
    if (sep2 < 1e-30)
      throw std::invalid_argument("dominance_region: identical (point, height) pairs");
    DominanceRegion reg;
    reg.kind = DominanceKind::Halfspace;
    reg.center = 0.5 * (p_n + p_m);
    reg.normal = p_m - p_n;
    return reg;
  }

  const double ratio = parameter_ratio(h_n, h_m, gamma);
  const double denom = 1.0 - ratio;
  DominanceRegion reg;
  reg.kind = h_n < h_m ? DominanceKind::Ball : DominanceKind::BallComplement;
  reg.center = (1.0 / denom) * (p_n - ratio * p_m);
  reg.radius2 = ratio * sep2 / (denom * denom) +
                h_n * h_n * (std::pow(ratio, 1.0 - 2.0 * gamma) - 1.0) / denom;
  return reg;
}

std::size_t classify(const Point& omega, const Quantizer& q, const DistortionParams& params) {
  if (q.points.empty()) throw std::invalid_argument("classify: empty quantizer");
  params.validate();
  const auto w = all_weights(q, params.gamma);
  return argmin_weighted(omega, q.points, w);
}

Partition1D cells_1d(const Quantizer& q, const Region& region, const DistortionParams& params) {
  if (region.dim() != 1) throw std::invalid_argument("cells_1d: region must be one-dimensional");
  params.validate();
  validate(q, region);

  const double length = region.width();
  const std::size_t count = q.size();
  Partition1D partition;
  partition.cells.resize(count);

  for (std::size_t n = 0; n < count; ++n) {
    IntervalList cell{{0.0, length}};
    for (std::size_t m = 0; m < count && !cell.empty(); ++m) {
      if (m == n) continue;
      const auto reg =
          dominance_region(q.points[n], q.heights[n], q.points[m], q.heights[m], params.gamma);
      cell = intersect_sorted(cell, restrict_to_segment(reg, length));
    }
    partition.cells[n] = std::move(cell);
  }
  return partition;
}

GridPartition grid_partition(const Quantizer& q, const Region& region, const Density& density,
                             const DistortionParams& params, int resolution_x, int resolution_y,
                             int threads) {
  params.validate();
  validate(q, region);
  if (resolution_x < 2) throw std::invalid_argument("grid_partition: resolution must be >= 2");
  if (region.dim() == 2 && resolution_y == 0) resolution_y = resolution_x;
  if (region.dim() == 2 && resolution_y < 2)
    throw std::invalid_argument("grid_partition: resolution must be >= 2");

  GridPartition grid;
  grid.nx = resolution_x;
  grid.ny = region.dim() == 2 ? resolution_y : 1;
  grid.dx = region.width() / grid.nx;
  grid.dy = region.dim() == 2 ? region.height() / grid.ny : 0.0;
  grid.owner.resize(static_cast<std::size_t>(grid.nx) * grid.ny);
  grid.mass.resize(grid.owner.size());

  const auto w = all_weights(q, params.gamma);
  const double cell_measure = region.dim() == 2 ? grid.dx * grid.dy : grid.dx;

  const auto fill_rows = [&](int iy_begin, int iy_end) {
    for (int iy = iy_begin; iy < iy_end; ++iy) {
      const double y = region.dim() == 2 ? (iy + 0.5) * grid.dy : 0.0;
      const std::size_t row = static_cast<std::size_t>(iy) * grid.nx;
      for (int ix = 0; ix < grid.nx; ++ix) {
        const Point omega{(ix + 0.5) * grid.dx, y};
        grid.owner[row + ix] = static_cast<std::int32_t>(argmin_weighted(omega, q.points, w));
        grid.mass[row + ix] = density(omega) * cell_measure;
      }
    }
  };

  threads = std::clamp(threads, 1, grid.ny);
  if (threads == 1) {
    fill_rows(0, grid.ny);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    const int rows_per_thread = (grid.ny + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      const int begin = t * rows_per_thread;
      const int end = std::min(grid.ny, begin + rows_per_thread);
      if (begin < end) pool.emplace_back(fill_rows, begin, end);
    }
    for (auto& worker : pool) worker.join();
  }

  double total = 0.0;
  for (double m : grid.mass) total += m;
  if (!(total > 0.0)) throw std::runtime_error("grid_partition: zero total mass");
  const double scale = 1.0 / total;
  for (double& m : grid.mass) m *= scale;
  return grid;
}

void write_partition_csv(const GridPartition& grid, std::ostream& out) {
  out << "x,y,owner,mass\n";
  char line[128];
  for (int iy = 0; iy < grid.ny; ++iy) {
    for (int ix = 0; ix < grid.nx; ++ix) {
      const std::size_t idx = static_cast<std::size_t>(iy) * grid.nx + ix;
      const Point c = grid.center(ix, iy);
      std::snprintf(line, sizeof(line), "%.17g,%.17g,%d,%.17g\n", c.x, c.y,
                    static_cast<int>(grid.owner[idx]), grid.mass[idx]);
      out << line;
    }
  }
}

void write_partition_ppm(const GridPartition& grid, std::ostream& out) {
  out << "P6\n" << grid.nx << " " << grid.ny << "\n255\n";
  const auto owner_color = [](std::int32_t owner, unsigned char rgb[3]) {
    // Low-discrepancy hue per owner, fixed saturation/value.
    const double hue = std::fmod(0.618033988749895 * (owner + 1), 1.0) * 6.0;
    const int sector = static_cast<int>(hue);
    const double f = hue - sector;
    const double v = 0.92;
    const double p = v * 0.25;
    const double qd = v * (1.0 - 0.75 * f);
    const double t = v * (1.0 - 0.75 * (1.0 - f));
    double r = 0.0;
    double g = 0.0;
    double b = 0.0;
    switch (sector % 6) {
      case 0: r = v; g = t; b = p; break;
      case 1: r = qd; g = v; b = p; break;
      case 2: r = p; g = v; b = t; break;
      case 3: r = p; g = qd; b = v; break;
      case 4: r = t; g = p; b = v; break;
      case 5: r = v; g = p; b = qd; break;
    }
    rgb[0] = static_cast<unsigned char>(r * 255.0);
    rgb[1] = static_cast<unsigned char>(g * 255.0);
    rgb[2] = static_cast<unsigned char>(b * 255.0);
  };

  std::vector<char> row(static_cast<std::size_t>(grid.nx) * 3);
  // Image rows run top to bottom; grid rows run bottom to top.
  for (int iy = grid.ny - 1; iy >= 0; --iy) {
    for (int ix = 0; ix < grid.nx; ++ix) {
      unsigned char rgb[3];
      owner_color(grid.owner[static_cast<std::size_t>(iy) * grid.nx + ix], rgb);
      row[3 * ix] = static_cast<char>(rgb[0]);
      row[3 * ix + 1] = static_cast<char>(rgb[1]);
      row[3 * ix + 2] = static_cast<char>(rgb[2]);
    }
    out.write(row.data(), static_cast<std::streamsize>(row.size()));
  }
}

}  // namespace pdq
