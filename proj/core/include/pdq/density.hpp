// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <vector>

#include "pdq/geometry.hpp"

namespace pdq {

// One isotropic Gaussian component N(mean, sigma^2 I) with a nonnegative
// mixture weight. Weights need not sum to one; the mixture is renormalized
// over the region.
struct GaussianComponent {
  double weight = 1.0;
  Point mean;
  double sigma = 1.0;
};

// Probability density over a Region, normalized so it integrates to one over
// the region. Gaussian mixtures are truncated to the region and renormalized
// in closed form (product of one-dimensional Gaussian CDF differences).
class Density {
 public:
  static Density uniform(const Region& region);
  static Density gaussian_mixture(const Region& region, std::vector<GaussianComponent> components);

  // Normalized density value at omega. omega must lie inside the region.
  double operator()(const Point& omega) const;

  const Region& region() const { return region_; }
  bool is_uniform() const { return components_.empty(); }
  const std::vector<GaussianComponent>& components() const { return components_; }

 private:
  explicit Density(const Region& region) : region_(region) {}

  Region region_;
  std::vector<GaussianComponent> components_;  // empty means uniform
  double normalizer_ = 1.0;                    // multiplies the unnormalized value
};

}  // namespace pdq
