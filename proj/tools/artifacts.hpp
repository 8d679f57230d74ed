// SPDX-License-Identifier: Apache-2.0
// File writers for the pdq command-line tools: quantizer JSON, convergence
// traces, sweep tables, and partition dumps.
#pragma once

#include <string>
#include <vector>

#include <pdq/lloyd.hpp>
#include <pdq/mobius.hpp>
#include <pdq/quantizer.hpp>

namespace pdqcli {

// Writes a quantizer as JSON. Doubles survive a write/load round trip
// bit for bit.
void write_quantizer_json(const std::string& path, const pdq::Quantizer& q, std::size_t dim,
                          double distortion);

pdq::Quantizer load_quantizer_json(const std::string& path);

// One row per optimization round: iteration index and distortion.
void write_trace_csv(const std::string& path, const std::vector<double>& trace);

void write_sweep_csv(const std::string& path, const std::vector<pdq::SweepRow>& rows);

// Emits quantizer.json, trace.csv, and for 2D regions partition.csv and
// partition.ppm into `dir`. Creates `dir` if needed.
void write_run_artifacts(const std::string& dir, const pdq::LloydReport& report,
                         const pdq::Region& region, const pdq::Density& density,
                         const pdq::DistortionParams& params, const pdq::LloydConfig& config);

}  // namespace pdqcli
