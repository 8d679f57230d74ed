// SPDX-License-Identifier: Apache-2.0
#include "pdq/quantizer.hpp"

#include <cmath>
#include <stdexcept>

namespace pdq {

void validate(const Quantizer& q, const Region& region) {
  if (q.points.empty()) throw std::invalid_argument("Quantizer: needs at least one point");
  if (q.points.size() != q.heights.size())
    throw std::invalid_argument("Quantizer: points/heights size mismatch");
  for (std::size_t n = 0; n < q.size(); ++n) {
    if (!(q.heights[n] > 0.0)) throw std::invalid_argument("Quantizer: heights must be positive");
    if (!region.contains(q.points[n], 1e-12))
      throw std::invalid_argument("Quantizer: point outside the region");
  }
}

bool has_common_height(const Quantizer& q, double tol) {
  if (q.heights.empty()) return true;
  const double h0 = q.heights.front();
  for (double h : q.heights) {
    if (std::fabs(h - h0) > tol * h0) return false;
  }
  return true;
}

Quantizer with_common_height(const Quantizer& q) {
  Quantizer out = q;
  double mean = 0.0;
  for (double h : q.heights) mean += h;
  mean /= static_cast<double>(q.heights.size());
  for (double& h : out.heights) h = mean;
  return out;
}

}  // namespace pdq
