// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "pdq/density.hpp"
#include "pdq/distortion.hpp"
#include "pdq/geometry.hpp"
#include "pdq/quantizer.hpp"

namespace pdq {

// Relative heights below 1e-12 of each other are treated as equal so that
// near-degenerate pairs fall back to the (numerically stable) halfspace case
// instead of a ball whose center diverges to infinity.
inline constexpr double kEqualHeightRelTol = 1e-12;

// (h_n / h_m)^(1/gamma).
double parameter_ratio(double h_n, double h_m, double gamma);

enum class DominanceKind { Halfspace, Ball, BallComplement };

// Set of ground points where point n beats point m, {omega : D_n <= D_m}.
// Halfspace: dot(omega - anchor, normal) <= 0 with anchor the midpoint of the
// two points. Ball / BallComplement: squared distance to center <= / >=
// radius2. The set is always understood intersected with the target region.
struct DominanceRegion {
  DominanceKind kind = DominanceKind::Halfspace;
  Point center;    // ball center, or halfspace anchor
  Point normal;    // halfspace only: p_m - p_n
  double radius2 = 0.0;

  bool contains(const Point& omega, double tol = 0.0) const {
    switch (kind) {
      case DominanceKind::Halfspace:
        return dot(omega - center, normal) <= tol;
      case DominanceKind::Ball:
        return squared_distance(omega, center) <= radius2 + tol;
      case DominanceKind::BallComplement:
      default:
        return squared_distance(omega, center) >= radius2 - tol;
    }
  }
};

DominanceRegion dominance_region(const Point& p_n, double h_n, const Point& p_m, double h_m,
                                 double gamma);

// Index of the point with the smallest distortion at omega; ties go to the
// lowest index. beta never changes the argmin.
std::size_t classify(const Point& omega, const Quantizer& q, const DistortionParams& params);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
};

// Exact one-dimensional partition: per point, the disjoint closed intervals
// of [0, A] it dominates, sorted by position. Cells may be empty.
struct Partition1D {
  std::vector<std::vector<Interval>> cells;
};

Partition1D cells_1d(const Quantizer& q, const Region& region, const DistortionParams& params);

// Midpoint-rule discretization of the dominance tessellation. Cells are
// indexed row-major, iy * nx + ix; mass sums to one after renormalization.
struct GridPartition {
  int nx = 0;
  int ny = 0;  // 1 for one-dimensional regions
  double dx = 0.0;
  double dy = 0.0;
  std::vector<std::int32_t> owner;
  std::vector<double> mass;

  std::size_t cell_count() const { return owner.size(); }

  Point center(int ix, int iy) const {
    return {(ix + 0.5) * dx, ny == 1 && dy == 0.0 ? 0.0 : (iy + 0.5) * dy};
  }
};

// resolution_x/resolution_y: grid cells per axis (resolution_y ignored for 1D
// regions). threads > 1 splits classification by row blocks; the result does
// not depend on the thread count.
GridPartition grid_partition(const Quantizer& q, const Region& region, const Density& density,
                             const DistortionParams& params, int resolution_x,
                             int resolution_y = 0, int threads = 1);

// CSV rows "x,y,owner,mass" with a header line.
void write_partition_csv(const GridPartition& grid, std::ostream& out);

// Binary PPM raster, one fixed palette color per owner.
void write_partition_ppm(const GridPartition& grid, std::ostream& out);

}  // namespace pdq
