#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "ntnsim/errors.hpp"
#include "ntnsim/experiments.hpp"

using namespace ntnsim;
using std::numbers::pi;

namespace {

RunConfig small() {
  RunConfig cfg;
  cfg.n_in = 200;
  cfg.n_out = 20;
  cfg.mc_draws = 4;
  cfg.workers = 1;
  return cfg;
}

std::size_t column(const CsvTable& t, const std::string& name) {
  for (std::size_t i = 0; i < t.header.size(); ++i) {
    if (t.header[i] == name) return i;
  }
  FAIL("missing column " << name);
  return 0;
}

double cell(const CsvTable& t, std::size_t row, const std::string& name) {
  return std::stod(t.rows.at(row).at(column(t, name)));
}

}  // namespace

TEST_CASE("experiment names") {
  for (auto k : kAllExperiments) CHECK(parse_experiment(experiment_name(k)) == k);
  CHECK_THROWS_AS(parse_experiment("plot"), ConfigError);
}

TEST_CASE("sweep table header") {
  auto cfg = small();
  cfg.altitudes_km = {20};
  const auto out = run_opt_alt_sweep(cfg);
  CHECK(out.sweep.to_string().rfind("seed,mode,metric,h_s_km,theta_max_rad,h_p_km,rel_err,n_in,n_out,excluded\n", 0) ==
        0);
  CHECK(out.sweep.rows.size() == 20);
}

TEST_CASE("optimal altitude sweep") {
  auto cfg = small();
  cfg.altitudes_km = {20, 550};
  cfg.n_in = 1000;
  cfg.n_out = 50;
  const auto out = run_opt_alt_sweep(cfg);
  REQUIRE(out.results.rows.size() == 2);
  const double expected[] = {20 / std::sqrt(2.0), 550 / std::sqrt(2.0)};
  for (std::size_t r = 0; r < 2; ++r) {
    const double hs = cell(out.results, r, "h_s_km");
    const double step = (hs + 6371.0) * (1 - 6371.0 / (hs + 6371.0)) / 51.0;
    CHECK(cell(out.results, r, "prop1_km") == doctest::Approx(expected[r]).epsilon(1e-10));
    CHECK(std::abs(cell(out.results, r, "h_opt_km") - expected[r]) <= step);
  }
}

TEST_CASE("error grows with altitude for t2") {
  auto cfg = small();
  cfg.altitudes_km = {20, 100, 550, 1000};
  const auto out = run_err_vs_altitude(cfg);
  REQUIRE(out.results.rows.size() == 4);
  for (std::size_t r = 0; r < 4; ++r) {
    CHECK(cell(out.results, r, "e_min") >= 0.0);
    CHECK(cell(out.results, r, "e_min_pct") == doctest::Approx(100 * cell(out.results, r, "e_min")));
    if (r > 0) {
      const double slack = cell(out.results, r - 1, "std_error") + cell(out.results, r, "std_error");
      CHECK(cell(out.results, r, "e_min") + slack >= cell(out.results, r - 1, "e_min"));
    }
  }
}

TEST_CASE("beam heatmap grows with the beam angle") {
  auto cfg = small();
  cfg.altitudes_km = {100, 550};
  const auto out = run_heatmap(cfg, ExperimentKind::HeatmapBeam);
  REQUIRE(out.results.rows.size() == 12);
  for (std::size_t r = 1; r < out.results.rows.size(); ++r) {
    if (cell(out.results, r, "h_s_km") != cell(out.results, r - 1, "h_s_km")) continue;
    const double slack = cell(out.results, r - 1, "std_error");
    CHECK(cell(out.results, r, "e_min") + slack >= cell(out.results, r - 1, "e_min"));
  }
}

TEST_CASE("area heatmap covers every cell") {
  auto cfg = small();
  const auto out = run_heatmap(cfg, ExperimentKind::HeatmapArea);
  CHECK(out.results.rows.size() == cfg.altitudes_km.size() * cfg.areas_km2.size());
  for (std::size_t r = 0; r < out.results.rows.size(); ++r) CHECK(out.results.rows[r][column(out.results, "region")] == "area");
}

TEST_CASE("single-cell grids give one row") {
  auto cfg = small();
  cfg.altitudes_km = {550};
  cfg.beam_angles_rad = {pi / 4};
  cfg.areas_km2 = {1e5};
  CHECK(run_heatmap(cfg, ExperimentKind::HeatmapBeam).results.rows.size() == 1);
  CHECK(run_heatmap(cfg, ExperimentKind::HeatmapArea).results.rows.size() == 1);
  CHECK(run_err_vs_altitude(cfg).results.rows.size() == 1);
}

TEST_CASE("case study") {
  auto cfg = small();
  cfg.case_study_beam_angles_rad = {pi / 24, pi / 12, pi / 6, pi / 2};
  const auto out = run_case_study(cfg);
  REQUIRE(out.results.rows.size() == 8);
  const auto& t = out.results;
  // rows: hap x 4 angles, then leo x 4 angles
  for (std::size_t i = 0; i < 2; ++i) CHECK(cell(t, 4 + i, "e_min") > 10 * cell(t, i, "e_min"));
  CHECK(t.rows[3][column(t, "platform")] == "hap");
  CHECK(t.rows[3][column(t, "planar_recommended")] == "1");
  // pi/6 -> pi/24 shrinks the beam 4x; the error falls more than 4x
  for (std::size_t base : {0u, 4u}) {
    const double slack = cell(t, base + 2, "std_error") + 4 * cell(t, base, "std_error");
    CHECK(4 * cell(t, base, "e_min") < cell(t, base + 2, "e_min") + slack);
  }
}

TEST_CASE("errors abort before computation") {
  auto cfg = small();
  cfg.mode = EstimationMode::CAM;
  cfg.metrics = {MetricId::T2_AvgEnergy, MetricId::S1_AvgSINR};
  CHECK_THROWS_AS(run_err_vs_altitude(cfg), ConfigError);
  cfg = small();
  cfg.beam_angles_rad = {pi / 2, 1.5 * pi};
  CHECK_THROWS_AS(run_heatmap(cfg, ExperimentKind::HeatmapBeam), DomainError);
  cfg = small();
  cfg.altitudes_km = {5000};
  cfg.metrics = {MetricId::S1_AvgSINR};
  CHECK_THROWS_AS(run_err_vs_altitude(cfg), ConfigError);
}

TEST_CASE("reruns are byte-identical") {
  auto cfg = small();
  cfg.metrics = {MetricId::T2_AvgEnergy, MetricId::S3_AvgRate};
  cfg.altitudes_km = {20, 550};
  cfg.n_in = 30;
  cfg.n_out = 4;
  for (auto k : kAllExperiments) {
    cfg.workers = 1;
    const auto a = run_experiment(k, cfg);
    cfg.workers = 4;
    const auto b = run_experiment(k, cfg);
    CHECK(a.results.to_string() == b.results.to_string());
    CHECK(a.sweep.to_string() == b.sweep.to_string());
  }
}

TEST_CASE("outputs and manifest on disk") {
  auto cfg = small();
  cfg.altitudes_km = {20};
  cfg.n_in = 10;
  cfg.n_out = 3;
  const auto out = run_err_vs_altitude(cfg);
  RunManifest m;
  m.experiment = "err-alt";
  m.config_hash = config_hash(cfg);
  m.seed = cfg.seed;
  m.started_utc = utc_timestamp();
  m.finished_utc = utc_timestamp();
  m.result_rows = out.results.rows.size();
  m.sweep_rows = out.sweep.rows.size();
  const auto dir = std::filesystem::temp_directory_path() / "ntnsim_test_outputs";
  std::filesystem::remove_all(dir);
  write_experiment(dir, out, m);
  CHECK(std::filesystem::exists(dir / "err-alt.csv"));
  CHECK(std::filesystem::exists(dir / "err-alt_sweep.csv"));
  std::ifstream f(dir / "err-alt_manifest.json");
  const auto j = nlohmann::json::parse(f);
  CHECK(j["seed"] == cfg.seed);
  CHECK(j["rows"]["results"] == 1);
  CHECK(j["rows"]["sweep"] == 3);
  CHECK(j["version"] == std::string(kVersion));
  CHECK(j["config_hash"].get<std::string>().size() == 16);
  std::filesystem::remove_all(dir);
}
