// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <random>
#include <vector>

#include <doctest.h>
#include <pdq/mobius.hpp>
#include <pdq/oned.hpp>
#include <pdq/quadrature.hpp>
#include <pdq/rng.hpp>

using namespace pdq;

namespace {

Quantizer quantizer_from(const OneDimOptimum& opt) {
  Quantizer q;
  for (double x : opt.points) q.points.push_back({x, 0.0});
  q.heights.assign(opt.points.size(), opt.height);
  return q;
}

Quantizer random_quantizer(std::mt19937_64& rng, const Region& region, std::size_t n) {
  Quantizer q;
  for (std::size_t i = 0; i < n; ++i) {
    Point p{uniform_in(rng, 0.0, region.width()), 0.0};
    if (region.dim() == 2) p.y = uniform_in(rng, 0.0, region.height());
    q.points.push_back(p);
    q.heights.push_back(uniform_in(rng, 0.05, 0.8 * region.diameter()));
  }
  return q;
}

// Contiguous interval partition from sorted random breakpoints, cells
// assigned to the points in index order.
Partition1D random_alternative(std::mt19937_64& rng, double length, std::size_t n) {
  std::vector<double> cuts{0.0, length};
  for (std::size_t i = 0; i + 1 < n; ++i) cuts.push_back(uniform_in(rng, 0.0, length));
  std::sort(cuts.begin(), cuts.end());
  Partition1D partition;
  partition.cells.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (cuts[i + 1] > cuts[i]) partition.cells[i].push_back({cuts[i], cuts[i + 1]});
  }
  return partition;
}

}  // namespace

TEST_CASE("interval quadrature reproduces the closed-form optimum") {
  const Region region = Region::interval(1.0);
  const Density density = Density::uniform(region);
  for (std::size_t n : {1ul, 2ul, 4ul}) {
    const OneDimOptimum opt = n_level_optimum(n, 1.0, 1.0);
    const Quantizer q = quantizer_from(opt);
    const Partition1D partition = cells_1d(q, region, {1.0, 1.0});
    const DistortionReport report = average_distortion(q, density, {1.0, 1.0}, partition);
    CHECK(report.total == doctest::Approx(opt.distortion).epsilon(1e-9));
    double mass = 0.0;
    for (double m : report.cell_mass) mass += m;
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));
    double sum = 0.0;
    for (double c : report.per_cell) sum += c;
    CHECK(sum == doctest::Approx(report.total).epsilon(1e-15));
  }
}

TEST_CASE("interval quadrature scales with the region length") {
  const Region region = Region::interval(2.0);
  const Density density = Density::uniform(region);
  const OneDimOptimum opt = n_level_optimum(2, 2.0, 1.0);
  const Quantizer q = quantizer_from(opt);
  const Partition1D partition = cells_1d(q, region, {1.0, 1.0});
  const DistortionReport report = average_distortion(q, density, {1.0, 1.0}, partition);
  CHECK(report.total == doctest::Approx(2.0 * 0.28867513459481288).epsilon(1e-9));
}

TEST_CASE("gradient vanishes at the closed-form optimum") {
  const Region region = Region::interval(1.0);
  const Density density = Density::uniform(region);
  for (double gamma : {1.0, 2.0}) {
    const Quantizer q = quantizer_from(n_level_optimum(4, 1.0, gamma));
    const Partition1D partition = cells_1d(q, region, {gamma, 1.0});
    const Gradient grad = gradient(q, density, {gamma, 1.0}, partition);
    for (std::size_t n = 0; n < 4; ++n) {
      CHECK(std::fabs(grad.d_point[n].x) < 1e-6);
      CHECK(std::fabs(grad.d_height[n]) < 1e-6);
    }
  }
}

TEST_CASE("gradient is mirror symmetric") {
  const Region region = Region::interval(1.0);
  const Density density = Density::uniform(region);
  Quantizer q;
  q.points = {{0.25, 0.0}, {0.75, 0.0}};
  q.heights = {0.21, 0.21};
  const DistortionParams params{1.5, 1.0};
  const Partition1D partition = cells_1d(q, region, params);
  const Gradient grad = gradient(q, density, params, partition);
  CHECK(grad.d_point[0].x == doctest::Approx(-grad.d_point[1].x).epsilon(1e-9));
  CHECK(grad.d_height[0] == doctest::Approx(grad.d_height[1]).epsilon(1e-9));
}

TEST_CASE("analytic gradient matches central differences") {
  std::mt19937_64 rng(43);
  const double gammas[] = {1.0, 1.5, 2.0, 3.0};

  SUBCASE("one dimension") {
    const Region region = Region::interval(1.0);
    const Density density = Density::uniform(region);
    for (int rep = 0; rep < 6; ++rep) {
      const DistortionParams params{gammas[rep % 4], 1.0};
      Quantizer q = random_quantizer(rng, region, 3);
      const Partition1D partition = cells_1d(q, region, params);
      const Gradient grad = gradient(q, density, params, partition);
      const double tol = 1e-12;
      for (std::size_t n = 0; n < q.size(); ++n) {
        const double step = 1e-4;
        Quantizer plus = q, minus = q;
        plus.points[n].x += step;
        minus.points[n].x -= step;
        const double fd_x = (average_distortion(plus, density, params, partition, tol).total -
                             average_distortion(minus, density, params, partition, tol).total) /
                            (2.0 * step);
        CHECK(std::fabs(grad.d_point[n].x - fd_x) <= 1e-5 * std::max(1.0, std::fabs(fd_x)));

        plus = q;
        minus = q;
        plus.heights[n] += step;
        minus.heights[n] -= step;
        const double fd_h = (average_distortion(plus, density, params, partition, tol).total -
                             average_distortion(minus, density, params, partition, tol).total) /
                            (2.0 * step);
        CHECK(std::fabs(grad.d_height[n] - fd_h) <= 1e-5 * std::max(1.0, std::fabs(fd_h)));
      }
    }
  }

  SUBCASE("two dimensions") {
    const Region region = Region::rectangle(1.0, 1.0);
    const Density density = Density::uniform(region);
    for (int rep = 0; rep < 4; ++rep) {
      const DistortionParams params{gammas[rep % 4], 1.0};
      Quantizer q = random_quantizer(rng, region, 3);
      const GridPartition grid = grid_partition(q, region, density, params, 200);
      const Gradient grad = gradient(q, params, grid);
      for (std::size_t n = 0; n < q.size(); ++n) {
        const double step = 1e-4;
        for (int axis = 0; axis < 3; ++axis) {
          Quantizer plus = q, minus = q;
          double analytic = 0.0;
          if (axis == 0) {
            plus.points[n].x += step;
            minus.points[n].x -= step;
            analytic = grad.d_point[n].x;
          } else if (axis == 1) {
            plus.points[n].y += step;
            minus.points[n].y -= step;
            analytic = grad.d_point[n].y;
          } else {
            plus.heights[n] += step;
            minus.heights[n] -= step;
            analytic = grad.d_height[n];
          }
          const double fd = (average_distortion(plus, params, grid).total -
                             average_distortion(minus, params, grid).total) /
                            (2.0 * step);
          CHECK(std::fabs(analytic - fd) <= 1e-5 * std::max(1.0, std::fabs(fd)));
        }
      }
    }
  }
}

TEST_CASE("dominance partition beats alternative partitions") {
  std::mt19937_64 rng(47);
  const Region region = Region::interval(1.0);
  const Density density = Density::uniform(region);
  for (int rep = 0; rep < 5; ++rep) {
    const DistortionParams params{1.0 + 1.5 * uniform01(rng), 1.0};
    const std::size_t n = 3 + rep % 3;
    const Quantizer q = random_quantizer(rng, region, n);
    const double mobius =
        average_distortion(q, density, params, cells_1d(q, region, params)).total;
    for (int alt = 0; alt < 5; ++alt) {
      const Partition1D other = random_alternative(rng, 1.0, n);
      const double alternative = average_distortion(q, density, params, other).total;
      CHECK(mobius <= alternative * (1.0 + 1e-9));
    }
  }
}

TEST_CASE("grid quadrature converges under refinement") {
  std::mt19937_64 rng(53);
  const Region region = Region::rectangle(1.0, 1.0);
  const Density density = Density::uniform(region);
  const DistortionParams params{1.5, 1.0};
  const Quantizer q = random_quantizer(rng, region, 5);
  const double coarse =
      average_distortion(q, params, grid_partition(q, region, density, params, 400)).total;
  const double fine =
      average_distortion(q, params, grid_partition(q, region, density, params, 800)).total;
  CHECK(std::fabs(coarse - fine) / fine < 0.005);
}

TEST_CASE("interval cell moments") {
  const Region region = Region::interval(1.0);
  const Density density = Density::uniform(region);
  Quantizer q;
  q.points = {{0.5, 0.0}};
  q.heights = {0.3};
  const Partition1D partition = cells_1d(q, region, {1.0, 1.0});
  const CellMoments moments = cell_moments(partition, 0, q.points[0], density);
  CHECK(moments.has_moments);
  CHECK(moments.mass == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(moments.centroid.x == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(moments.msd == doctest::Approx(1.0 / 12.0).epsilon(1e-9));
  CHECK_THROWS_AS(cell_moments(partition, 1, q.points[0], density), std::invalid_argument);
}

TEST_CASE("grid cell moments for an even split") {
  Quantizer q;
  q.points = {{0.25, 0.5}, {0.75, 0.5}};
  q.heights = {0.3, 0.3};
  const Region region = Region::rectangle(1.0, 1.0);
  const GridPartition grid =
      grid_partition(q, region, Density::uniform(region), {1.0, 1.0}, 400);
  const CellMoments left = cell_moments(grid, 0, q.points[0]);
  CHECK(left.has_moments);
  CHECK(left.mass == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(left.centroid.x == doctest::Approx(0.25).epsilon(1e-6));
  CHECK(left.centroid.y == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(left.msd == doctest::Approx((0.25 + 1.0) / 12.0).epsilon(1e-4));
}

TEST_CASE("inactive cells are reported as empty") {
  Quantizer q;
  q.points = {{0.1, 0.2}, {0.6, 0.6}};
  q.heights = {0.5, 2.5};
  const Region region = Region::rectangle(1.0, 1.0);
  const Density density = Density::uniform(region);
  const DistortionParams params{1.5, 1.0};
  const GridPartition grid = grid_partition(q, region, density, params, 400);
  const DistortionReport report = average_distortion(q, params, grid);
  CHECK(report.cell_mass[1] == 0.0);
  CHECK(report.per_cell[1] == 0.0);
  const CellMoments moments = cell_moments(grid, 1, q.points[1]);
  CHECK(!moments.has_moments);
  CHECK(moments.mass == 0.0);
}

TEST_CASE("quadrature rejects mismatched partitions") {
  const Region region = Region::interval(1.0);
  const Density density = Density::uniform(region);
  Quantizer q;
  q.points = {{0.3, 0.0}, {0.7, 0.0}};
  q.heights = {0.2, 0.2};
  Partition1D partition;
  partition.cells.resize(3);
  CHECK_THROWS_AS(average_distortion(q, density, {1.0, 1.0}, partition), std::invalid_argument);
}
