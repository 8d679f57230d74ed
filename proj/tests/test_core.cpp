// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <random>
#include <vector>

#include <doctest.h>
#include <pdq/density.hpp>
#include <pdq/distortion.hpp>
#include <pdq/geometry.hpp>
#include <pdq/quantizer.hpp>
#include <pdq/rng.hpp>

using namespace pdq;

TEST_CASE("region basics") {
  const Region line = Region::interval(2.0);
  CHECK(line.dim() == 1);
  CHECK(line.measure() == doctest::Approx(2.0));
  CHECK(line.diameter() == doctest::Approx(2.0));
  CHECK(line.contains({1.0, 0.0}));
  CHECK(!line.contains({2.5, 0.0}));

  const Region rect = Region::rectangle(3.0, 4.0);
  CHECK(rect.dim() == 2);
  CHECK(rect.measure() == doctest::Approx(12.0));
  CHECK(rect.diameter() == doctest::Approx(5.0));
  CHECK(rect.contains({3.0, 4.0}));
  CHECK(!rect.contains({3.0, 4.1}));

  const Point clamped = rect.clamp({-1.0, 5.0});
  CHECK(clamped.x == 0.0);
  CHECK(clamped.y == 4.0);

  CHECK_THROWS_AS(Region::interval(0.0), std::invalid_argument);
  CHECK_THROWS_AS(Region::rectangle(1.0, -2.0), std::invalid_argument);
}

TEST_CASE("point arithmetic") {
  const Point a{1.0, 2.0};
  const Point b{4.0, 6.0};
  CHECK(squared_distance(a, b) == doctest::Approx(25.0));
  CHECK(distance(a, b) == doctest::Approx(5.0));
  CHECK(dot(a, b) == doctest::Approx(16.0));
  const Point c = a + 0.5 * (b - a);
  CHECK(c.x == doctest::Approx(2.5));
  CHECK(c.y == doctest::Approx(4.0));
}

TEST_CASE("uniform01 is deterministic and in range") {
  std::mt19937_64 r1(42), r2(42);
  for (int i = 0; i < 1000; ++i) {
    const double u = uniform01(r1);
    CHECK(u == uniform01(r2));
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
}

TEST_CASE("distortion params validation") {
  DistortionParams ok{1.5, 2.0};
  CHECK_NOTHROW(ok.validate());
  CHECK_THROWS_AS((DistortionParams{0.5, 1.0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((DistortionParams{1.0, 0.0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS(distortion({0, 0}, {1, 0}, 0.0, ok), std::domain_error);
}

TEST_CASE("weight pair reproduces the height form") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 10000; ++i) {
    const double gamma = uniform_in(rng, 1.0, 4.0);
    const double h = std::exp(uniform_in(rng, -4.0, 3.0));
    const double d2 = std::exp(uniform_in(rng, -6.0, 6.0));
    const CellWeights w = weights_from_height(h, gamma);
    const double via_weights = std::pow(w.a * d2 + w.b, gamma);
    const double direct = std::pow(d2 + h * h, gamma) / h;
    CHECK(via_weights == doctest::Approx(direct).epsilon(1e-12));
  }
  CHECK_THROWS_AS(weights_from_height(0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(weights_from_height(1.0, 0.5), std::invalid_argument);
}

TEST_CASE("fast power matches std::pow") {
  std::mt19937_64 rng(11);
  const double exponents[] = {0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 7.0,
                              64.0, -0.5, -1.0, -2.5, 0.3333, 17.21};
  for (double e : exponents) {
    const PowExp pw(e);
    CHECK(pw.exponent() == e);
    const double span = std::min(18.0, 600.0 / std::max(1.0, std::fabs(e)));
    for (int i = 0; i < 200; ++i) {
      const double t = std::exp(uniform_in(rng, -span, span));
      const double expected = std::pow(t, e);
      CHECK(pw(t) == doctest::Approx(expected).epsilon(1e-13));
    }
  }
}

TEST_CASE("distortion is midpoint convex in the height") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 2000; ++i) {
    const DistortionParams params{uniform_in(rng, 1.0, 4.0), std::exp(uniform_in(rng, -2.0, 2.0))};
    const Point omega{uniform_in(rng, -3.0, 3.0), uniform_in(rng, -3.0, 3.0)};
    const Point p{uniform_in(rng, -3.0, 3.0), uniform_in(rng, -3.0, 3.0)};
    const double h1 = std::exp(uniform_in(rng, -3.0, 2.0));
    const double h2 = std::exp(uniform_in(rng, -3.0, 2.0));
    const double lhs = distortion(omega, p, 0.5 * (h1 + h2), params);
    const double rhs = 0.5 * (distortion(omega, p, h1, params) + distortion(omega, p, h2, params));
    CHECK(lhs <= rhs * (1.0 + 1e-12) + 1e-300);
  }
}

TEST_CASE("channel mapping") {
  SUBCASE("alpha sets the exponent") {
    ChannelModel ch;
    ch.alpha = 3.0;
    const DistortionParams params = channel_to_distortion_params(ch);
    CHECK(params.gamma == doctest::Approx(2.0).epsilon(1e-15));
  }
  SUBCASE("exact scale for round numbers") {
    ChannelModel ch;
    ch.alpha = 3.0;
    ch.rate_bps = 2.0;
    ch.bandwidth_hz = 2.0;   // 2^(R/B) - 1 = 1
    ch.noise_psd = 0.5;
    ch.shadowing_sigma_db = 0.0;
    ch.gain_product = 4.0;
    ch.reference_distance = 1.0;
    const DistortionParams params = channel_to_distortion_params(ch);
    CHECK(params.gamma == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(params.beta == doctest::Approx(0.25).epsilon(1e-15));
  }
  SUBCASE("shadowing margin and reference distance") {
    ChannelModel ch;
    ch.alpha = 2.0;
    ch.rate_bps = 1.0;
    ch.bandwidth_hz = 1.0;
    ch.noise_psd = 1.0;
    ch.shadowing_sigma_db = 10.0;
    ch.gain_product = 1.0;
    ch.reference_distance = 2.0;
    const DistortionParams params = channel_to_distortion_params(ch);
    const double margin = std::exp(-100.0 * std::log(10.0) * std::log(10.0) / 200.0);
    CHECK(params.gamma == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(params.beta == doctest::Approx(margin / 4.0).epsilon(1e-14));
  }
  SUBCASE("validation") {
    ChannelModel bad;
    bad.alpha = 0.5;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  }
}

TEST_CASE("uniform density") {
  const Region region = Region::rectangle(2.0, 5.0);
  const Density density = Density::uniform(region);
  CHECK(density.is_uniform());
  CHECK(density({1.0, 1.0}) == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(density({0.0, 0.0}) == doctest::Approx(0.1).epsilon(1e-15));
  CHECK_THROWS_AS(density({3.0, 1.0}), std::domain_error);
}

TEST_CASE("gaussian mixture normalizes in closed form") {
  const Region region = Region::rectangle(10.0, 10.0);
  const std::vector<GaussianComponent> components = {
      {0.5, {3.0, 3.0}, 1.5},
      {0.25, {6.0, 7.0}, 1.0},
      {0.25, {7.5, 2.5}, 2.0},
  };
  const Density density = Density::gaussian_mixture(region, components);
  CHECK(!density.is_uniform());
  CHECK(density({3.0, 3.0}) == doctest::Approx(0.03897684456400273).epsilon(1e-12));

  // The closed-form normalizer must make the midpoint-rule integral one, up
  // to the O(dx^2) quadrature truncation of the rule itself.
  const int n = 400;
  const double cell = 10.0 / n;
  double total = 0.0;
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix)
      total += density({(ix + 0.5) * cell, (iy + 0.5) * cell}) * cell * cell;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("gaussian mixture on an interval") {
  const Region region = Region::interval(4.0);
  const Density density = Density::gaussian_mixture(region, {{1.0, {1.0, 0.0}, 0.75}});
  const int n = 20000;
  const double cell = 4.0 / n;
  double total = 0.0;
  for (int i = 0; i < n; ++i) total += density({(i + 0.5) * cell, 0.0}) * cell;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("mixture validation") {
  const Region region = Region::rectangle(1.0, 1.0);
  CHECK_THROWS_AS(Density::gaussian_mixture(region, {}), std::invalid_argument);
  CHECK_THROWS_AS(Density::gaussian_mixture(region, {{1.0, {0.5, 0.5}, 0.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(Density::gaussian_mixture(region, {{-1.0, {0.5, 0.5}, 1.0}}),
                  std::invalid_argument);
}

TEST_CASE("quantizer validation") {
  const Region region = Region::rectangle(1.0, 1.0);
  Quantizer q;
  CHECK_THROWS_AS(validate(q, region), std::invalid_argument);
  q.points = {{0.2, 0.2}, {0.8, 0.8}};
  q.heights = {0.5};
  CHECK_THROWS_AS(validate(q, region), std::invalid_argument);
  q.heights = {0.5, 0.0};
  CHECK_THROWS_AS(validate(q, region), std::invalid_argument);
  q.heights = {0.5, 0.5};
  CHECK_NOTHROW(validate(q, region));
  q.points[1] = {1.5, 0.5};
  CHECK_THROWS_AS(validate(q, region), std::invalid_argument);
}

TEST_CASE("common height helpers") {
  Quantizer q;
  q.points = {{0.1, 0.0}, {0.9, 0.0}};
  q.heights = {0.5, 0.5};
  CHECK(has_common_height(q));
  q.heights = {0.5, 0.5 * (1.0 + 1e-13)};
  CHECK(has_common_height(q));
  q.heights = {0.4, 0.8};
  CHECK(!has_common_height(q));
  const Quantizer c = with_common_height(q);
  CHECK(c.heights[0] == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(c.heights[1] == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(has_common_height(c));
}
