// SPDX-License-Identifier: Apache-2.0
#include "scenario.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace pdqcli {

namespace {

using nlohmann::json;

pdq::Region parse_region(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("scenario: \"region\" must be an object");
  if (j.contains("A")) return pdq::Region::interval(j.at("A").get<double>());
  if (j.contains("width") && j.contains("height"))
    return pdq::Region::rectangle(j.at("width").get<double>(), j.at("height").get<double>());
  throw std::invalid_argument("scenario: \"region\" needs either \"A\" or \"width\"/\"height\"");
}

pdq::Density parse_density(const json& j, const pdq::Region& region) {
  if (!j.is_object() || !j.contains("type"))
    throw std::invalid_argument("scenario: \"density\" needs a \"type\"");
  const std::string type = j.at("type").get<std::string>();
  if (type == "uniform") return pdq::Density::uniform(region);
  if (type == "mixture") {
    std::vector<pdq::GaussianComponent> components;
    for (const auto& cj : j.at("components")) {
      pdq::GaussianComponent c;
      c.weight = cj.at("weight").get<double>();
      c.sigma = cj.at("sigma").get<double>();
      const auto& mean = cj.at("mean");
      c.mean.x = mean.at(0).get<double>();
      c.mean.y = region.dim() == 2 ? mean.at(1).get<double>() : 0.0;
      components.push_back(c);
    }
    return pdq::Density::gaussian_mixture(region, std::move(components));
  }
  throw std::invalid_argument("scenario: unknown density type \"" + type + "\"");
}

pdq::DistortionParams parse_params(const json& j) {
  const bool has_gamma = j.contains("gamma");
  const bool has_channel = j.contains("channel");
  if (has_gamma == has_channel)
    throw std::invalid_argument("scenario: exactly one of \"gamma\" or \"channel\" is required");
  if (has_gamma) {
    pdq::DistortionParams params;
    params.gamma = j.at("gamma").get<double>();
    params.beta = j.value("beta", 1.0);
    params.validate();
    return params;
  }
  const auto& cj = j.at("channel");
  pdq::ChannelModel ch;
  ch.alpha = cj.at("alpha").get<double>();
  ch.rate_bps = cj.value("rate_bps", ch.rate_bps);
  ch.bandwidth_hz = cj.value("bandwidth_hz", ch.bandwidth_hz);
  ch.noise_psd = cj.value("noise_psd", ch.noise_psd);
  ch.shadowing_sigma_db = cj.value("shadowing_sigma_db", ch.shadowing_sigma_db);
  ch.gain_product = cj.value("gain_product", ch.gain_product);
  ch.reference_distance = cj.value("reference_distance", ch.reference_distance);
  return pdq::channel_to_distortion_params(ch);
}

void parse_lloyd(const json& j, Scenario& scenario) {
  pdq::LloydConfig& cfg = scenario.lloyd;
  if (j.contains("variant")) {
    const std::string v = j.at("variant").get<std::string>();
    if (v == "A") {
      cfg.variant = pdq::LloydVariant::CommonHeight;
    } else if (v == "B") {
      cfg.variant = pdq::LloydVariant::IndividualHeights;
    } else {
      throw std::invalid_argument("scenario: lloyd variant must be \"A\" or \"B\"");
    }
  }
  cfg.max_iters = j.value("max_iters", cfg.max_iters);
  cfg.rel_tol = j.value("rel_tol", cfg.rel_tol);
  cfg.simpson_tol = j.value("simpson_tol", cfg.simpson_tol);
  if (j.contains("grid")) {
    const auto& g = j.at("grid");
    cfg.grid_resolution_x = g.at(0).get<int>();
    cfg.grid_resolution_y = g.size() > 1 ? g.at(1).get<int>() : 0;
  }
  scenario.seeds = j.value("seeds", scenario.seeds);
  scenario.seed = j.value("seed", scenario.seed);
  scenario.random_deployments = j.value("rd", scenario.random_deployments);
}

}  // namespace

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("scenario: cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("scenario: " + path + ": " + e.what());
  }

  if (!j.contains("region")) throw std::invalid_argument("scenario: missing \"region\"");
  if (!j.contains("density")) throw std::invalid_argument("scenario: missing \"density\"");
  if (!j.contains("N")) throw std::invalid_argument("scenario: missing \"N\"");

  const pdq::Region region = parse_region(j.at("region"));
  Scenario scenario(region, parse_density(j.at("density"), region));
  scenario.params = parse_params(j);
  const auto levels = j.at("N").get<long long>();
  if (levels < 1) throw std::invalid_argument("scenario: \"N\" must be >= 1");
  scenario.levels = static_cast<std::size_t>(levels);
  if (j.contains("lloyd")) parse_lloyd(j.at("lloyd"), scenario);
  scenario.output_dir = j.value("output_dir", std::string{});
  scenario.lloyd.validate();
  return scenario;
}

}  // namespace pdqcli
