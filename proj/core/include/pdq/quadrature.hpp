// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <vector>

#include "pdq/density.hpp"
#include "pdq/distortion.hpp"
#include "pdq/geometry.hpp"
#include "pdq/mobius.hpp"
#include "pdq/quantizer.hpp"

namespace pdq {

inline constexpr double kSimpsonTol1D = 1e-10;

// Average distortion split into per-point contributions. total equals the sum
// of contributions by construction (fixed summation order).
struct DistortionReport {
  double total = 0.0;
  std::vector<double> per_cell;
  std::vector<double> cell_mass;
};

// Midpoint rule over the ownership grid.
DistortionReport average_distortion(const Quantizer& q, const DistortionParams& params,
                                    const GridPartition& grid);

// Adaptive Simpson over the exact intervals of a one-dimensional partition.
DistortionReport average_distortion(const Quantizer& q, const Density& density,
                                    const DistortionParams& params, const Partition1D& partition,
                                    double tol = kSimpsonTol1D);

// Fixed-partition derivatives of the average distortion. Valid as the
// derivative of the tessellated objective because boundary motion drops out:
// both neighbors pay the same distortion on a shared boundary, so the
// boundary terms cancel. d_height > 0 means distortion increases with h.
struct Gradient {
  std::vector<Point> d_point;
  std::vector<double> d_height;
};

Gradient gradient(const Quantizer& q, const DistortionParams& params, const GridPartition& grid);

Gradient gradient(const Quantizer& q, const Density& density, const DistortionParams& params,
                  const Partition1D& partition, double tol = kSimpsonTol1D);

// Mass, centroid and mean squared distance to p of one cell. has_moments is
// false for an (effectively) empty cell, in which case centroid and msd are
// meaningless.
struct CellMoments {
  double mass = 0.0;
  Point centroid;
  double msd = 0.0;
  bool has_moments = false;
};

CellMoments cell_moments(const GridPartition& grid, std::size_t n, const Point& p);

CellMoments cell_moments(const Partition1D& partition, std::size_t n, const Point& p,
                         const Density& density, double tol = kSimpsonTol1D);

}  // namespace pdq
