// SPDX-License-Identifier: Apache-2.0
#include "pdq/distortion.hpp"

namespace pdq {

DistortionParams channel_to_distortion_params(const ChannelModel& ch) {
  ch.validate();
  constexpr double kLn10 = 2.302585092994045684;
  const double snr_gap = std::exp2(ch.rate_bps / ch.bandwidth_hz) - 1.0;
  const double shadowing = std::exp(-ch.shadowing_sigma_db * ch.shadowing_sigma_db *
                                    kLn10 * kLn10 / 200.0);
  DistortionParams params;
  params.gamma = 0.5 * (ch.alpha + 1.0);
  params.beta = snr_gap * ch.bandwidth_hz * ch.noise_psd * shadowing /
                (ch.gain_product * std::pow(ch.reference_distance, ch.alpha));
  return params;
}

}  // namespace pdq
