// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <vector>

#include "pdq/geometry.hpp"

namespace pdq {

// Deployment of N ground points with one positive parameter (height) each.
struct Quantizer {
  std::vector<Point> points;
  std::vector<double> heights;

  std::size_t size() const { return points.size(); }
};

// Throws std::invalid_argument unless sizes match, N >= 1, every height is
// positive and every point lies inside the region.
void validate(const Quantizer& q, const Region& region);

// True when all heights coincide up to |h_n - h_0| <= tol * h_0.
bool has_common_height(const Quantizer& q, double tol = 1e-12);

// Copy of q with every height replaced by the mean height.
Quantizer with_common_height(const Quantizer& q);

}  // namespace pdq
