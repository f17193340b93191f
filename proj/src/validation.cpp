#include "ntnsim/validation.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "ntnsim/distributions.hpp"
#include "ntnsim/metrics.hpp"
#include "ntnsim/pointgen.hpp"
#include "ntnsim/regions.hpp"
#include "ntnsim/stats.hpp"

namespace ntnsim {

namespace {

// Stream families, one per check, so suites can run in any order.
constexpr std::uint64_t kMeanSqStream = 11;
constexpr std::uint64_t kDistanceStream = 12;
constexpr std::uint64_t kHomogeneityStream = 13;
constexpr std::uint64_t kSimilarityStream = 14;

constexpr double kKsBound = 0.006;
constexpr double kHomogeneityP = 1e-3;
constexpr double kBiasedP = 1e-6;
constexpr double kMonteCarloTolerance = 0.005;
constexpr double kRoundTripTolerance = 1e-12;

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

CheckResult below(std::string name, double statistic, double threshold) {
  return {std::move(name), statistic, threshold, statistic < threshold};
}

}  // namespace

bool all_pass(const std::vector<CheckResult>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

std::vector<CheckResult> check_mean_sq_distance(std::uint64_t seed, const EarthConstants& c, std::size_t n_points) {
  std::vector<CheckResult> out;
  const double re = c.earth_radius_km;
  for (double hs : {20.0, 100.0, 550.0, 1000.0}) {
    const double rs = re + hs;
    const double theta = los_theta_max(rs, c);
    out.push_back(below(fmt::format("mean_sq_identity_h{}", hs),
                        rel(mean_sq_distance_spherical(rs, theta, c), rs * hs), kRoundTripTolerance));
  }

  const double hs = 550.0;
  const double rs = re + hs;
  const double theta = los_theta_max(rs, c);
  const double exact = rs * hs;
  const double h_opt = optimal_altitude(rs, theta, rs * std::sin(theta), c);
  const auto pair = generate_pair(DeploymentParams::make(rs, theta, h_opt, n_points), RngSpec{seed, kMeanSqStream});
  const double t2s = t2_avg_energy(pair.spherical_cartesian(), c);
  const double t2p = t2_avg_energy(pair.planar_cartesian(), c);
  out.push_back(below("mean_sq_monte_carlo_spherical", rel(t2s, exact), kMonteCarloTolerance));
  out.push_back(below("mean_sq_monte_carlo_planar_at_h_opt", rel(t2p, exact), kMonteCarloTolerance));
  return out;
}

std::vector<CheckResult> check_distance_laws(std::uint64_t seed, const EarthConstants& c, std::size_t n_points,
                                             std::size_t sets) {
  std::vector<CheckResult> out;
  const RngSpec base{seed, kDistanceStream};
  for (std::size_t k = 0; k < sets; ++k) {
    const CounterRng pick(base.child(k).child(0));
    const double hs = 20.0 + 1980.0 * pick.uniform_at(0);
    const double rs = c.earth_radius_km + hs;
    const double theta = los_theta_max(rs, c) * (0.1 + 0.9 * pick.uniform_at(1));
    const double lower = rs * std::cos(theta);
    const double hp = lower + (rs - lower) * (0.05 + 0.9 * pick.uniform_at(2));
    const auto params = DeploymentParams::make(rs, theta, hp, n_points);
    const auto pair = generate_pair(params, base.child(k).child(1));

    std::vector<double> ds(n_points);
    std::vector<double> dp(n_points);
    for (std::size_t i = 0; i < n_points; ++i) {
      ds[i] = user_distance_spherical(pair.spherical[i].polar, rs, c);
      dp[i] = user_distance_planar(pair.planar[i].horizontal_radius, hp, c);
    }
    const double ks_s = ks_statistic(std::move(ds), [&](double d) { return cdf_spherical(d, rs, theta, c); });
    const double ks_p =
        ks_statistic(std::move(dp), [&](double d) { return cdf_planar(d, params.rho_max, hp, c); });
    out.push_back(below(fmt::format("ks_spherical_set{}", k), ks_s, kKsBound));
    out.push_back(below(fmt::format("ks_planar_set{}", k), ks_p, kKsBound));
  }
  return out;
}

std::vector<CheckResult> check_homogeneity(std::uint64_t seed, const EarthConstants& c, std::size_t n_points,
                                           std::size_t seeds) {
  const double rs = c.earth_radius_km + 550.0;
  const double theta = los_theta_max(rs, c);
  const double hp = optimal_altitude(rs, theta, rs * std::sin(theta), c);
  const auto params = DeploymentParams::make(rs, theta, hp, n_points);
  const CellGrid grid = CellGrid::from_count(100);
  const RngSpec base{seed, kHomogeneityStream};

  double fail_x = 0.0;
  double fail_y = 0.0;
  double min_p = 1.0;
  for (std::size_t k = 0; k < seeds; ++k) {
    const auto pair = generate_pair(params, base.child(k));
    const double px = homogeneity_test(pair.spherical, theta, grid).p_value;
    const double py = homogeneity_test(pair.planar, params.rho_max, grid).p_value;
    fail_x += px > kHomogeneityP ? 0.0 : 1.0;
    fail_y += py > kHomogeneityP ? 0.0 : 1.0;
    min_p = std::min({min_p, px, py});
  }

  // theta = u theta_max crowds the zenith.
  const CounterRng gen(base.child(seeds));
  std::vector<SphericalPoint> biased(n_points);
  for (std::size_t i = 0; i < n_points; ++i) {
    const auto [u, v] = uniform_pair_at(gen, i);
    biased[i] = {rs, kTwoPi * v, u * theta};
  }
  const double p_biased = homogeneity_test(biased, theta, grid).p_value;

  return {
      {"homogeneity_x_failures", fail_x, 1.0, fail_x <= 1.0},
      {"homogeneity_y_failures", fail_y, 1.0, fail_y <= 1.0},
      below("homogeneity_biased_sampler_p", p_biased, kBiasedP),
  };
}

std::vector<CheckResult> check_similarity(std::uint64_t seed, std::size_t n_points) {
  constexpr double area = 1e6;
  const std::vector<double> radii{1e3, 1e4, 1e5, 1e6};
  const CounterRng gen(RngSpec{seed, kSimilarityStream});
  std::vector<UniformPair> uniforms(n_points);
  for (std::size_t n = 0; n < n_points; ++n) uniforms[n] = uniform_pair_at(gen, n);

  std::vector<double> disp;
  for (double r : radii) disp.push_back(similarity_displacement(area, r, uniforms));

  std::vector<CheckResult> out;
  for (std::size_t i = 1; i < disp.size(); ++i) {
    // Ratio below 1 means strictly decreasing.
    out.push_back(below(fmt::format("similarity_decreasing_r{:g}", radii[i]), disp[i] / disp[i - 1], 1.0));
  }
  out.push_back(below("similarity_max_displacement_r1e6_km", disp.back(), 0.01 * std::sqrt(area / std::numbers::pi)));
  return out;
}

std::vector<CheckResult> check_region_round_trips(const EarthConstants& c) {
  constexpr std::size_t grid = 100;
  std::vector<CheckResult> out;
  for (double hs : {20.0, 550.0, 35786.0}) {
    const double rs = c.earth_radius_km + hs;
    const double los = los_theta_max(rs, c);
    double beam_err = 0.0;
    double theta_err = 0.0;
    double area_err = 0.0;
    double area_theta_err = 0.0;
    for (std::size_t i = 1; i <= grid; ++i) {
      const double f = static_cast<double>(i) / static_cast<double>(grid);
      const double psi = f * std::numbers::pi;
      beam_err = std::max(beam_err, rel(beam_from_theta_max(theta_max_from_beam(psi, rs, c).theta_max, rs, c), psi));
      const double theta = f * los;
      theta_err = std::max(theta_err, rel(theta_max_from_beam(beam_from_theta_max(theta, rs, c), rs, c).theta_max, theta));
      const double area = f * cap_area(rs, los);
      area_err = std::max(area_err, rel(cap_area(rs, theta_max_from_area(area, rs)), area));
      area_theta_err = std::max(area_theta_err, rel(theta_max_from_area(cap_area(rs, theta), rs), theta));
    }
    out.push_back(below(fmt::format("beam_theta_beam_h{}", hs), beam_err, kRoundTripTolerance));
    out.push_back(below(fmt::format("theta_beam_theta_h{}", hs), theta_err, kRoundTripTolerance));
    out.push_back(below(fmt::format("area_theta_area_h{}", hs), area_err, kRoundTripTolerance));
    out.push_back(below(fmt::format("theta_area_theta_h{}", hs), area_theta_err, kRoundTripTolerance));
    const double horizon = theta_max_from_beam(std::numbers::pi, rs, c).theta_max;
    out.push_back(below(fmt::format("beam_pi_is_los_h{}", hs), rel(horizon, los), kRoundTripTolerance));
  }
  return out;
}

std::vector<CheckResult> run_validation(std::uint64_t seed, const EarthConstants& c) {
  std::vector<CheckResult> out;
  for (auto part : {check_mean_sq_distance(seed, c), check_distance_laws(seed, c), check_homogeneity(seed, c),
                    check_similarity(seed), check_region_round_trips(c)}) {
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

}  // namespace ntnsim
