// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "pdq/geometry.hpp"

namespace pdq {

// Exponent/scale pair of the distortion measure
//   D(omega, p, h) = beta * (||p - omega||^2 + h^2)^gamma / h.
struct DistortionParams {
  double gamma = 1.0;
  double beta = 1.0;

  void validate() const {
    if (!(gamma >= 1.0)) throw std::invalid_argument("DistortionParams: gamma must be >= 1");
    if (!(beta > 0.0)) throw std::invalid_argument("DistortionParams: beta must be positive");
  }
};

// Link-budget description. Mapped onto DistortionParams by
// channel_to_distortion_params.
struct ChannelModel {
  double alpha = 2.0;              // path-loss exponent
  double rate_bps = 1.0;           // required rate R_b
  double bandwidth_hz = 1.0;       // bandwidth B
  double noise_psd = 1.0;          // noise power spectral density N_0
  double shadowing_sigma_db = 0.0; // log-normal shadowing std deviation
  double gain_product = 1.0;       // combined antenna gain G_GT * K
  double reference_distance = 1.0; // path-loss reference distance d_0

  void validate() const {
    if (!(alpha >= 1.0)) throw std::invalid_argument("ChannelModel: alpha must be >= 1");
    if (!(bandwidth_hz > 0.0)) throw std::invalid_argument("ChannelModel: bandwidth must be positive");
    if (!(noise_psd > 0.0)) throw std::invalid_argument("ChannelModel: noise_psd must be positive");
    if (!(gain_product > 0.0)) throw std::invalid_argument("ChannelModel: gain_product must be positive");
    if (!(reference_distance > 0.0))
      throw std::invalid_argument("ChannelModel: reference_distance must be positive");
    if (rate_bps < 0.0) throw std::invalid_argument("ChannelModel: rate must be nonnegative");
    if (shadowing_sigma_db < 0.0)
      throw std::invalid_argument("ChannelModel: shadowing sigma must be nonnegative");
  }
};

DistortionParams channel_to_distortion_params(const ChannelModel& ch);

// t^e evaluated cheaply for the exponents this library actually uses. The hot
// loops raise to gamma, gamma-1 and gamma-2 millions of times per iteration;
// for integer and half-integer exponents (every path-loss exponent alpha with
// 2*gamma = alpha + 1 integral) this avoids std::pow entirely.
class PowExp {
 public:
  explicit PowExp(double e) : exponent_(e) {
    const double doubled = 2.0 * e;
    const double rounded = std::nearbyint(doubled);
    if (std::fabs(doubled - rounded) < 1e-12 && std::fabs(rounded) <= 128.0) {
      const auto twice = static_cast<std::int64_t>(rounded);
      negate_ = twice < 0;
      const std::int64_t mag = negate_ ? -twice : twice;
      half_ = (mag & 1) != 0;
      int_part_ = static_cast<int>(mag >> 1);
      fast_ = true;
    }
  }

  double operator()(double t) const {
    if (!fast_) return std::pow(t, exponent_);
    double acc = 1.0;
    double base = t;
    for (int k = int_part_; k != 0; k >>= 1) {
      if (k & 1) acc *= base;
      base *= base;
    }
    if (half_) acc *= std::sqrt(t);
    return negate_ ? 1.0 / acc : acc;
  }

  double exponent() const { return exponent_; }

 private:
  double exponent_;
  int int_part_ = 0;
  bool half_ = false;
  bool negate_ = false;
  bool fast_ = false;
};

// Weight pair (a, b) with a = h^(-1/gamma), b = h^(2-1/gamma), giving the
// equivalent form D = beta * (a d^2 + b)^gamma.
struct CellWeights {
  double a = 1.0;
  double b = 1.0;
};

inline CellWeights weights_from_height(double h, double gamma) {
  if (!(h > 0.0)) throw std::domain_error("weights_from_height: h must be positive");
  if (!(gamma >= 1.0)) throw std::invalid_argument("weights_from_height: gamma must be >= 1");
  const double a = std::pow(h, -1.0 / gamma);
  return {a, h * h * a};
}

inline double distortion(const Point& omega, const Point& p, double h,
                         const DistortionParams& params) {
  if (!(h > 0.0)) throw std::domain_error("distortion: h must be positive");
  const double t = squared_distance(omega, p) + h * h;
  return params.beta * std::pow(t, params.gamma) / h;
}

}  // namespace pdq
