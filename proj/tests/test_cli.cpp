// SPDX-License-Identifier: Apache-2.0
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <doctest.h>
#include <pdq/lloyd.hpp>

#include "artifacts.hpp"
#include "scenario.hpp"

namespace fs = std::filesystem;

namespace {

// Writes `text` to a unique temp file and removes it on scope exit.
class TempFile {
 public:
  explicit TempFile(const std::string& text) {
    static int counter = 0;
    path_ = (fs::temp_directory_path() / ("pdq_test_" + std::to_string(counter++) + ".json"))
                .string();
    std::ofstream out(path_);
    out << text;
  }
  ~TempFile() { std::remove(path_.c_str()); }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace

TEST_CASE("scenario with explicit exponent") {
  const TempFile file(R"({
    "region": {"width": 10.0, "height": 10.0},
    "density": {"type": "mixture", "components": [
      {"weight": 0.5, "mean": [3.0, 3.0], "sigma": 1.5},
      {"weight": 0.25, "mean": [6.0, 7.0], "sigma": 1.0},
      {"weight": 0.25, "mean": [7.5, 2.5], "sigma": 2.0}
    ]},
    "gamma": 3.5,
    "N": 16,
    "lloyd": {"variant": "B", "max_iters": 350, "rel_tol": 1e-7,
              "grid": [300, 200], "seeds": 7, "seed": 11, "rd": 42},
    "output_dir": "out"
  })");
  const pdqcli::Scenario s = pdqcli::load_scenario(file.path());
  CHECK(s.region.dim() == 2);
  CHECK(s.region.width() == 10.0);
  CHECK(!s.density.is_uniform());
  CHECK(s.density.components().size() == 3);
  CHECK(s.params.gamma == 3.5);
  CHECK(s.params.beta == 1.0);
  CHECK(s.levels == 16);
  CHECK(s.lloyd.variant == pdq::LloydVariant::IndividualHeights);
  CHECK(s.lloyd.max_iters == 350);
  CHECK(s.lloyd.rel_tol == 1e-7);
  CHECK(s.lloyd.grid_resolution_x == 300);
  CHECK(s.lloyd.grid_resolution_y == 200);
  CHECK(s.seeds == 7);
  CHECK(s.seed == 11);
  CHECK(s.random_deployments == 42);
  CHECK(s.output_dir == "out");
}

TEST_CASE("scenario with channel block on an interval") {
  const TempFile file(R"({
    "region": {"A": 2.0},
    "density": {"type": "uniform"},
    "channel": {"alpha": 3.0, "rate_bps": 2.0, "bandwidth_hz": 2.0,
                "noise_psd": 0.5, "gain_product": 4.0},
    "N": 4,
    "lloyd": {"variant": "A"}
  })");
  const pdqcli::Scenario s = pdqcli::load_scenario(file.path());
  CHECK(s.region.dim() == 1);
  CHECK(s.density.is_uniform());
  CHECK(s.params.gamma == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(s.params.beta == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(s.lloyd.variant == pdq::LloydVariant::CommonHeight);
  CHECK(s.levels == 4);
  CHECK(s.seeds == 20);
  CHECK(s.random_deployments == 100);
  CHECK(s.output_dir.empty());
}

TEST_CASE("scenario rejections") {
  CHECK_THROWS_AS(pdqcli::load_scenario("/nonexistent/path.json"), std::runtime_error);

  const TempFile not_json("this is not json");
  CHECK_THROWS_AS(pdqcli::load_scenario(not_json.path()), std::invalid_argument);

  const TempFile no_region(R"({"density": {"type": "uniform"}, "gamma": 1.0, "N": 2})");
  CHECK_THROWS_AS(pdqcli::load_scenario(no_region.path()), std::invalid_argument);

  const TempFile no_density(R"({"region": {"A": 1.0}, "gamma": 1.0, "N": 2})");
  CHECK_THROWS_AS(pdqcli::load_scenario(no_density.path()), std::invalid_argument);

  const TempFile no_levels(R"({"region": {"A": 1.0}, "density": {"type": "uniform"},
                               "gamma": 1.0})");
  CHECK_THROWS_AS(pdqcli::load_scenario(no_levels.path()), std::invalid_argument);

  const TempFile both(R"({"region": {"A": 1.0}, "density": {"type": "uniform"},
                          "gamma": 1.0, "channel": {"alpha": 2.0}, "N": 2})");
  CHECK_THROWS_AS(pdqcli::load_scenario(both.path()), std::invalid_argument);

  const TempFile neither(R"({"region": {"A": 1.0}, "density": {"type": "uniform"}, "N": 2})");
  CHECK_THROWS_AS(pdqcli::load_scenario(neither.path()), std::invalid_argument);

  const TempFile bad_variant(R"({"region": {"A": 1.0}, "density": {"type": "uniform"},
                                 "gamma": 1.0, "N": 2, "lloyd": {"variant": "C"}})");
  CHECK_THROWS_AS(pdqcli::load_scenario(bad_variant.path()), std::invalid_argument);

  const TempFile bad_density(R"({"region": {"A": 1.0}, "density": {"type": "blue"},
                                 "gamma": 1.0, "N": 2})");
  CHECK_THROWS_AS(pdqcli::load_scenario(bad_density.path()), std::invalid_argument);

  const TempFile bad_levels(R"({"region": {"A": 1.0}, "density": {"type": "uniform"},
                                "gamma": 1.0, "N": 0})");
  CHECK_THROWS_AS(pdqcli::load_scenario(bad_levels.path()), std::invalid_argument);

  const TempFile bad_gamma(R"({"region": {"A": 1.0}, "density": {"type": "uniform"},
                               "gamma": 0.25, "N": 2})");
  CHECK_THROWS_AS(pdqcli::load_scenario(bad_gamma.path()), std::invalid_argument);
}

TEST_CASE("quantizer json round trip is exact") {
  pdq::Quantizer q;
  q.points = {{1.0 / 3.0, 0.1 + 0.2}, {std::nextafter(0.5, 1.0), 1e-17}};
  q.heights = {0.30000000000000004, 7.2e-3};

  const std::string path =
      (fs::temp_directory_path() / "pdq_test_roundtrip.json").string();
  pdqcli::write_quantizer_json(path, q, 2, 0.125);
  const pdq::Quantizer back = pdqcli::load_quantizer_json(path);
  std::remove(path.c_str());

  REQUIRE(back.points.size() == 2);
  for (std::size_t n = 0; n < 2; ++n) {
    CHECK(back.points[n].x == q.points[n].x);
    CHECK(back.points[n].y == q.points[n].y);
    CHECK(back.heights[n] == q.heights[n]);
  }
}

TEST_CASE("one-dimensional quantizer json round trip") {
  pdq::Quantizer q;
  q.points = {{0.125, 0.0}, {0.375, 0.0}, {0.625, 0.0}};
  q.heights = {0.072168783648703221, 0.072168783648703221, 0.072168783648703221};

  const std::string path = (fs::temp_directory_path() / "pdq_test_roundtrip1d.json").string();
  pdqcli::write_quantizer_json(path, q, 1, 0.25);
  const pdq::Quantizer back = pdqcli::load_quantizer_json(path);
  std::remove(path.c_str());

  REQUIRE(back.points.size() == 3);
  for (std::size_t n = 0; n < 3; ++n) {
    CHECK(back.points[n].x == q.points[n].x);
    CHECK(back.points[n].y == 0.0);
    CHECK(back.heights[n] == q.heights[n]);
  }
}

TEST_CASE("trace and sweep files are written with headers") {
  const fs::path dir = fs::temp_directory_path() / "pdq_test_artifacts";
  fs::create_directories(dir);

  pdqcli::write_trace_csv((dir / "trace.csv").string(), {3.0, 2.0, 1.5});
  std::ifstream trace(dir / "trace.csv");
  std::string line;
  std::getline(trace, line);
  CHECK(line == "iteration,distortion");
  std::getline(trace, line);
  CHECK(line == "0,3");
  std::getline(trace, line);
  CHECK(line == "1,2");

  pdq::SweepRow row;
  row.alpha = 2.0;
  row.gamma = 1.5;
  row.levels = 16;
  row.lloyd_a = 1.25;
  row.lloyd_b = 1.0;
  pdqcli::write_sweep_csv((dir / "sweep.csv").string(), {row});
  std::ifstream sweep(dir / "sweep.csv");
  std::getline(sweep, line);
  CHECK(line ==
        "alpha,gamma,N,lloydA,lloydB,lloydA_first,lloydB_first,"
        "rd_mean,rd_min,rd_max,hstar,bound,dstar");
  std::getline(sweep, line);
  CHECK(line.rfind("2,1.5,16,1.25,1,", 0) == 0);

  fs::remove_all(dir);
}
