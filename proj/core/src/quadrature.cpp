// SPDX-License-Identifier: Apache-2.0
#include "pdq/quadrature.hpp"

#include <cmath>
#include <stdexcept>

#include "pdq/integrate.hpp"

namespace pdq {

namespace {

void check_sizes(const Quantizer& q, std::size_t partition_cells) {
  if (q.size() != partition_cells)
    throw std::invalid_argument("quadrature: partition size does not match quantizer");
}

}  // namespace

DistortionReport average_distortion(const Quantizer& q, const DistortionParams& params,
                                    const GridPartition& grid) {
  params.validate();
  const std::size_t count = q.size();
  DistortionReport report;
  report.per_cell.assign(count, 0.0);
  report.cell_mass.assign(count, 0.0);

  const PowExp pow_gamma(params.gamma);
  std::vector<double> inv_h(count);
  for (std::size_t n = 0; n < count; ++n) inv_h[n] = params.beta / q.heights[n];

  for (int iy = 0; iy < grid.ny; ++iy) {
    for (int ix = 0; ix < grid.nx; ++ix) {
      const std::size_t idx = static_cast<std::size_t>(iy) * grid.nx + ix;
      const auto n = static_cast<std::size_t>(grid.owner[idx]);
      if (n >= count) throw std::invalid_argument("quadrature: owner index out of range");
      const Point omega = grid.center(ix, iy);
      const double t = squared_distance(omega, q.points[n]) + q.heights[n] * q.heights[n];
      report.per_cell[n] += grid.mass[idx] * inv_h[n] * pow_gamma(t);
      report.cell_mass[n] += grid.mass[idx];
    }
  }
  for (std::size_t n = 0; n < count; ++n) report.total += report.per_cell[n];
  return report;
}

DistortionReport average_distortion(const Quantizer& q, const Density& density,
                                    const DistortionParams& params, const Partition1D& partition,
                                    double tol) {
  params.validate();
  check_sizes(q, partition.cells.size());
  DistortionReport report;
  report.per_cell.assign(q.size(), 0.0);
  report.cell_mass.assign(q.size(), 0.0);

  const PowExp pow_gamma(params.gamma);
  for (std::size_t n = 0; n < q.size(); ++n) {
    const double x = q.points[n].x;
    const double h2 = q.heights[n] * q.heights[n];
    const double scale = params.beta / q.heights[n];
    for (const Interval& cell : partition.cells[n]) {
      report.per_cell[n] += adaptive_simpson(
          [&](double w) {
            const double d = w - x;
            return scale * pow_gamma(d * d + h2) * density({w, 0.0});
          },
          cell.lo, cell.hi, tol);
      report.cell_mass[n] +=
          adaptive_simpson([&](double w) { return density({w, 0.0}); }, cell.lo, cell.hi, tol);
    }
  }
  for (std::size_t n = 0; n < q.size(); ++n) report.total += report.per_cell[n];
  return report;
}

Gradient gradient(const Quantizer& q, const DistortionParams& params, const GridPartition& grid) {
  params.validate();
  const std::size_t count = q.size();
  Gradient grad;
  grad.d_point.assign(count, Point{});
  grad.d_height.assign(count, 0.0);

  const double gamma = params.gamma;
  const PowExp pow_gm1(gamma - 1.0);

  for (int iy = 0; iy < grid.ny; ++iy) {
    for (int ix = 0; ix < grid.nx; ++ix) {
      const std::size_t idx = static_cast<std::size_t>(iy) * grid.nx + ix;
      const auto n = static_cast<std::size_t>(grid.owner[idx]);
      if (n >= count) throw std::invalid_argument("quadrature: owner index out of range");
      const Point omega = grid.center(ix, iy);
      const double h = q.heights[n];
      const double r2 = squared_distance(omega, q.points[n]);
      const double tg = pow_gm1(r2 + h * h);
      const double m = grid.mass[idx];
      grad.d_point[n] = grad.d_point[n] + (m * tg) * (q.points[n] - omega);
      grad.d_height[n] += m * tg * ((2.0 * gamma - 1.0) * h * h - r2);
    }
  }
  for (std::size_t n = 0; n < count; ++n) {
    const double h = q.heights[n];
    grad.d_point[n] = (2.0 * gamma * params.beta / h) * grad.d_point[n];
    grad.d_height[n] *= params.beta / (h * h);
  }
  return grad;
}

Gradient gradient(const Quantizer& q, const Density& density, const DistortionParams& params,
                  const Partition1D& partition, double tol) {
  params.validate();
  check_sizes(q, partition.cells.size());
  const std::size_t count = q.size();
  Gradient grad;
  grad.d_point.assign(count, Point{});
  grad.d_height.assign(count, 0.0);

  const double gamma = params.gamma;
  const PowExp pow_gm1(gamma - 1.0);

  for (std::size_t n = 0; n < count; ++n) {
    const double x = q.points[n].x;
    const double h = q.heights[n];
    const double h2 = h * h;
    double dx_accum = 0.0;
    double dh_accum = 0.0;
    for (const Interval& cell : partition.cells[n]) {
      dx_accum += adaptive_simpson(
          [&](double w) {
            const double d = x - w;
            return d * pow_gm1(d * d + h2) * density({w, 0.0});
          },
          cell.lo, cell.hi, tol);
      dh_accum += adaptive_simpson(
          [&](double w) {
            const double r2 = (x - w) * (x - w);
            return pow_gm1(r2 + h2) * ((2.0 * gamma - 1.0) * h2 - r2) * density({w, 0.0});
          },
          cell.lo, cell.hi, tol);
    }
    grad.d_point[n] = {2.0 * gamma * params.beta / h * dx_accum, 0.0};
    grad.d_height[n] = params.beta / h2 * dh_accum;
  }
  return grad;
}

CellMoments cell_moments(const GridPartition& grid, std::size_t n, const Point& p) {
  CellMoments mom;
  double sw_x = 0.0;
  double sw_y = 0.0;
  double sw_r2 = 0.0;
  for (int iy = 0; iy < grid.ny; ++iy) {
    for (int ix = 0; ix < grid.nx; ++ix) {
      const std::size_t idx = static_cast<std::size_t>(iy) * grid.nx + ix;
      if (static_cast<std::size_t>(grid.owner[idx]) != n) continue;
      const Point omega = grid.center(ix, iy);
      const double m = grid.mass[idx];
      mom.mass += m;
      sw_x += m * omega.x;
      sw_y += m * omega.y;
      sw_r2 += m * squared_distance(omega, p);
    }
  }
  if (mom.mass > 0.0) {
    mom.centroid = {sw_x / mom.mass, sw_y / mom.mass};
    mom.msd = sw_r2 / mom.mass;
    mom.has_moments = true;
  }
  return mom;
}

CellMoments cell_moments(const Partition1D& partition, std::size_t n, const Point& p,
                         const Density& density, double tol) {
  if (n >= partition.cells.size()) throw std::invalid_argument("cell_moments: index out of range");
  CellMoments mom;
  double sw_x = 0.0;
  double sw_r2 = 0.0;
  for (const Interval& cell : partition.cells[n]) {
    mom.mass += adaptive_simpson([&](double w) { return density({w, 0.0}); }, cell.lo, cell.hi, tol);
    sw_x += adaptive_simpson([&](double w) { return w * density({w, 0.0}); }, cell.lo, cell.hi, tol);
    sw_r2 += adaptive_simpson(
        [&](double w) { return (w - p.x) * (w - p.x) * density({w, 0.0}); }, cell.lo, cell.hi, tol);
  }
  if (mom.mass > 0.0) {
    mom.centroid = {sw_x / mom.mass, 0.0};
    mom.msd = sw_r2 / mom.mass;
    mom.has_moments = true;
  }
  return mom;
}

}  // namespace pdq
