#include <doctest.h>

#include <cmath>
#include <cstring>
#include <numbers>

#include "ntnsim/distributions.hpp"
#include "ntnsim/errest.hpp"
#include "ntnsim/errors.hpp"
#include "ntnsim/pointgen.hpp"

using namespace ntnsim;

namespace {
const EarthConstants kEarth;

EstimationConfig los_config(double hs, MetricId metric, std::size_t n_in, std::size_t n_out) {
  EstimationConfig cfg;
  cfg.sphere_radius_km = kEarth.earth_radius_km + hs;
  cfg.theta_max = los_theta_max(cfg.sphere_radius_km, kEarth);
  cfg.metric = metric;
  cfg.n_in = n_in;
  cfg.n_out = n_out;
  if (is_system_level(metric)) cfg.channel = ChannelModel::aerial_to_ground();
  return cfg;
}

double prop1(const EstimationConfig& cfg) {
  return optimal_altitude(cfg.sphere_radius_km, cfg.theta_max, cfg.rho_max(), kEarth);
}

double grid_step(const EstimationConfig& cfg) {
  return cfg.sphere_radius_km * (1 - std::cos(cfg.theta_max)) / static_cast<double>(cfg.n_out + 1);
}
}  // namespace

TEST_CASE("CSM altitude grid") {
  const double rs = 6921.0;
  const double t = 0.4;
  const auto g = csm_altitudes(rs, t, 9);
  REQUIRE(g.size() == 9);
  const double dh = rs * (1 - std::cos(t)) / 10;
  CHECK(g.front() == doctest::Approx(rs * std::cos(t) + dh).epsilon(1e-13));
  CHECK(g.back() == doctest::Approx(rs - dh).epsilon(1e-13));
  for (std::size_t k = 1; k < g.size(); ++k) CHECK(g[k] - g[k - 1] == doctest::Approx(dh).epsilon(1e-9));
}

TEST_CASE("single-altitude sweep returns that altitude") {
  auto cfg = los_config(550, MetricId::T2_AvgEnergy, 50, 1);
  const auto e = estimate_csm(cfg);
  REQUIRE(e.per_altitude.size() == 1);
  CHECK(e.h_opt_km == e.per_altitude[0].planar_height_km);
  CHECK(e.e_min == e.per_altitude[0].mean_rel_err);
}

TEST_CASE("swept t2 optimum sits within one step of the closed form") {
  for (double hs : {20.0, 550.0}) {
    auto cfg = los_config(hs, MetricId::T2_AvgEnergy, 2000, 50);
    const auto e = estimate_csm(cfg);
    CHECK(std::abs(e.h_opt_km - prop1(cfg)) <= grid_step(cfg));
    CHECK_FALSE(e.unreliable);
    CHECK(e.evaluated == 2000 * 50);
  }
}

TEST_CASE("contact metric prefers a higher plane than t2") {
  // The nearest point dominates t3; matching it needs h_p close to the
  // spherical altitude, above the mean-equalizing plane but below h_s.
  auto cfg = los_config(550, MetricId::T3_ContactEnergy, 500, 50);
  const auto e = estimate_csm(cfg);
  const double ratio = (e.h_opt_km - 6371.0) / (prop1(cfg) - 6371.0);
  CHECK(ratio > 1.0);
  CHECK(ratio < std::sqrt(2.0));
}

TEST_CASE("JSAM stays close to the CSM minimum") {
  auto cfg = los_config(550, MetricId::T2_AvgEnergy, 2000, 50);
  const auto csm = estimate_csm(cfg);
  cfg.mode = EstimationMode::JSAM;
  const auto jsam = estimate(cfg);
  REQUIRE(jsam.per_altitude.size() == 1);
  CHECK(jsam.h_opt_km == prop1(cfg));
  CHECK(jsam.e_min <= 2.0 * csm.e_min);
  CHECK(jsam.e_min >= csm.e_min * 0.5);
}

TEST_CASE("single inner iteration is valid") {
  auto cfg = los_config(550, MetricId::T2_AvgEnergy, 1, 5);
  cfg.mode = EstimationMode::JSAM;
  const auto e = estimate(cfg);
  CHECK(e.provenance.n_in == 1);
  CHECK(e.provenance.mode == EstimationMode::JSAM);
  CHECK(e.e_min >= 0.0);
}

TEST_CASE("HAP t2 error is below one per mille") {
  auto cfg = los_config(20, MetricId::T2_AvgEnergy, 1000, 50);
  CHECK(estimate_csm(cfg).e_min < 1e-3);
}

TEST_CASE("refining the altitude grid") {
  auto cfg = los_config(550, MetricId::T2_AvgEnergy, 1000, 50);
  const auto coarse = estimate_csm(cfg);
  const double step = grid_step(cfg);
  cfg.n_out = 100;
  const auto fine = estimate_csm(cfg);
  const double se = std::max(fine.e_min_std_error, coarse.e_min_std_error);
  // The finer grid can only find a lower minimum, up to noise.
  CHECK(fine.e_min < coarse.e_min + 2 * se);
  // Near the optimum the relative t2 error moves by 2 (h_p - R_e) / h_s^2 per km
  // at most; the two minima sit within one coarse step of each other.
  const double slope = 2 * (coarse.h_opt_km - kEarth.earth_radius_km) / (550.0 * 550.0);
  CHECK(std::abs(fine.e_min - coarse.e_min) < slope * step + 2 * se);
  CHECK(std::abs(fine.h_opt_km - coarse.h_opt_km) <= step);
}

TEST_CASE("t2 error at the closed-form altitude shrinks with more points") {
  auto cfg = los_config(550, MetricId::T2_AvgEnergy, 400, 1);
  cfg.mode = EstimationMode::JSAM;
  cfg.n_points = 20;
  const double small = estimate(cfg).e_min;
  cfg.n_points = 2000;
  const double large = estimate(cfg).e_min;
  CHECK(large < 0.2 * small);
}

TEST_CASE("identical results for any worker count") {
  for (MetricId m : {MetricId::T1_PairedTransport, MetricId::T3_ContactEnergy, MetricId::S2_Coverage}) {
    auto cfg = los_config(550, m, 64, 5);
    cfg.mc_draws = 4;
    cfg.workers = 1;
    const auto a = estimate_csm(cfg);
    for (std::size_t w : {4u, 16u}) {
      cfg.workers = w;
      const auto b = estimate_csm(cfg);
      for (std::size_t k = 0; k < a.per_altitude.size(); ++k) {
        CHECK(std::memcmp(&a.per_altitude[k].mean_rel_err, &b.per_altitude[k].mean_rel_err, sizeof(double)) == 0);
      }
    }
  }
}

TEST_CASE("t1 error uses the documented stream layout") {
  auto cfg = los_config(550, MetricId::T1_PairedTransport, 30, 3);
  const auto grid = csm_altitudes(cfg.sphere_radius_km, cfg.theta_max, 3);
  const auto row = relative_error_at(grid[1], cfg, 2);
  const auto params = DeploymentParams::make(cfg.sphere_radius_km, cfg.theta_max, grid[1], cfg.n_points);
  double sum = 0.0;
  for (std::size_t i = 0; i < 30; ++i) {
    sum += t1_paired_transport(generate_pair(params, RngSpec{cfg.seed, 0}.child(2).child(i).child(0)), kEarth);
  }
  CHECK(row.mean_rel_err == doctest::Approx(sum / 30).epsilon(1e-14));
  CHECK(estimate_csm(cfg).per_altitude[1].mean_rel_err == row.mean_rel_err);
}

TEST_CASE("narrow cap collapses to the overhead geometry for t3") {
  EstimationConfig cfg;
  cfg.sphere_radius_km = 6921.0;
  cfg.theta_max = 1e-3;
  cfg.metric = MetricId::T3_ContactEnergy;
  cfg.n_in = 20;
  cfg.n_out = 3;
  const auto e = estimate_csm(cfg);
  for (const auto& row : e.per_altitude) {
    const double hs = 550.0;
    const double hp = row.planar_height_km - 6371.0;
    const double expected = std::abs(hs * hs - hp * hp) / (hs * hs);
    // Lateral offsets inside a 1e-3 rad cap perturb the value by ~1e-6.
    CHECK(std::abs(row.mean_rel_err - expected) < 2e-6);
  }
}

TEST_CASE("closed-form mode for t2") {
  auto cfg = los_config(550, MetricId::T2_AvgEnergy, 10, 10);
  cfg.mode = EstimationMode::CAM;
  const auto e = estimate(cfg);
  CHECK(e.e_min < 1e-12);
  CHECK(e.h_opt_km == prop1(cfg));
  cfg.metric = MetricId::T3_ContactEnergy;
  CHECK_THROWS_AS(estimate(cfg), ConfigError);
}

TEST_CASE("zero-valued spherical metric is excluded and flagged") {
  auto cfg = los_config(550, MetricId::S2_Coverage, 20, 2);
  cfg.mc_draws = 2;
  cfg.channel->sinr_threshold_db = 400.0;
  const auto e = estimate_csm(cfg);
  CHECK(e.excluded == 40);
  CHECK(e.unreliable);
  CHECK(std::isnan(e.e_min));
}

TEST_CASE("configuration errors") {
  auto cfg = los_config(550, MetricId::S1_AvgSINR, 10, 2);
  cfg.channel.reset();
  CHECK_THROWS_AS(estimate(cfg), ConfigError);
  cfg = los_config(550, MetricId::T2_AvgEnergy, 0, 2);
  CHECK_THROWS_AS(estimate(cfg), ConfigError);
  cfg = los_config(550, MetricId::T2_AvgEnergy, 10, 2);
  cfg.sphere_radius_km = 6000.0;
  CHECK_THROWS_AS(estimate(cfg), DomainError);
  CHECK(parse_mode("jsam") == EstimationMode::JSAM);
  CHECK_THROWS_AS(parse_mode("fast"), ConfigError);
}
