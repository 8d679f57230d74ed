// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>

#include "pdq/density.hpp"
#include "pdq/distortion.hpp"
#include "pdq/geometry.hpp"
#include "pdq/lloyd.hpp"

namespace pdqcli {

// Experiment description loaded from a JSON scenario file:
//   {
//     "region":  {"A": 1.0} | {"width": 10.0, "height": 10.0},
//     "density": {"type": "uniform"} |
//                {"type": "mixture",
//                 "components": [{"weight": w, "mean": [x, y], "sigma": s}, ...]},
//     "gamma":   3.5,            // exclusive with "channel"
//     "beta":    1.0,            // optional, default 1
//     "channel": {"alpha": 6.0, "rate_bps": ..., "bandwidth_hz": ...,
//                 "noise_psd": ..., "shadowing_sigma_db": ...,
//                 "gain_product": ..., "reference_distance": ...},
//     "N":       16,
//     "lloyd":   {"variant": "A"|"B", "max_iters": 500, "rel_tol": 1e-8,
//                 "grid": [400, 400], "simpson_tol": 1e-10,
//                 "seeds": 20, "seed": 1, "rd": 100},   // all optional
//     "output_dir": "out"        // optional
//   }
struct Scenario {
  pdq::Region region;
  pdq::Density density;
  pdq::DistortionParams params;
  std::size_t levels = 1;
  pdq::LloydConfig lloyd;
  int seeds = 20;
  int random_deployments = 100;
  std::uint64_t seed = 1;
  std::string output_dir;

  Scenario(pdq::Region r, pdq::Density d) : region(r), density(std::move(d)) {}
};

// Throws std::runtime_error when the file cannot be read and
// std::invalid_argument on schema violations.
Scenario load_scenario(const std::string& path);

}  // namespace pdqcli
