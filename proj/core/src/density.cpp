// SPDX-License-Identifier: Apache-2.0
#include "pdq/density.hpp"

#include <cmath>

namespace pdq {

namespace {

constexpr double kInvSqrt2 = 0.7071067811865475244;

// Mass of the standard Gaussian N(mu, sigma^2) on [0, upper].
double gaussian_interval_mass(double mu, double sigma, double upper) {
  const double s = kInvSqrt2 / sigma;
  return 0.5 * (std::erf((upper - mu) * s) - std::erf((0.0 - mu) * s));
}

}  // namespace

Density Density::uniform(const Region& region) {
  Density d(region);
  d.normalizer_ = 1.0 / region.measure();
  return d;
}

Density Density::gaussian_mixture(const Region& region,
                                  std::vector<GaussianComponent> components) {
  if (components.empty())
    throw std::invalid_argument("Density: mixture needs at least one component");
  double total_weight = 0.0;
  double mass = 0.0;
  for (const auto& c : components) {
    if (!(c.sigma > 0.0)) throw std::invalid_argument("Density: component sigma must be positive");
    if (c.weight < 0.0) throw std::invalid_argument("Density: component weight must be nonnegative");
    total_weight += c.weight;
    double m = gaussian_interval_mass(c.mean.x, c.sigma, region.width());
    if (region.dim() == 2) m *= gaussian_interval_mass(c.mean.y, c.sigma, region.height());
    mass += c.weight * m;
  }
  if (!(total_weight > 0.0)) throw std::invalid_argument("Density: total mixture weight must be positive");
  if (!(mass > 0.0)) throw std::invalid_argument("Density: mixture carries no mass on the region");

  Density d(region);
  d.components_ = std::move(components);
  d.normalizer_ = 1.0 / mass;
  return d;
}

double Density::operator()(const Point& omega) const {
  if (!region_.contains(omega, 1e-12))
    throw std::domain_error("Density: point outside the region");
  if (components_.empty()) return normalizer_;

  constexpr double kTwoPi = 6.2831853071795864769;
  double value = 0.0;
  for (const auto& c : components_) {
    const double s2 = c.sigma * c.sigma;
    const double q = squared_distance(omega, c.mean) / (2.0 * s2);
    const double prefactor =
        region_.dim() == 2 ? 1.0 / (kTwoPi * s2) : 1.0 / std::sqrt(kTwoPi * s2);
    value += c.weight * prefactor * std::exp(-q);
  }
  return value * normalizer_;
}

}  // namespace pdq
