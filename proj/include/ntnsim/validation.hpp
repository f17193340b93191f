#pragma once

// Statistical and analytic self-checks shared by the `validate` subcommand
// and the acceptance binary. Each check reports the statistic it measured
// and the bound it was compared against.

#include <cstdint>
#include <string>
#include <vector>

#include "ntnsim/geom.hpp"

namespace ntnsim {

struct CheckResult {
  std::string name;
  double statistic = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

bool all_pass(const std::vector<CheckResult>& checks);

/// Mean squared distance identity on LoS caps and its Monte Carlo
/// counterparts on both processes (planar at the equalizing altitude).
std::vector<CheckResult> check_mean_sq_distance(std::uint64_t seed, const EarthConstants& c,
                                                std::size_t n_points = 1'000'000);

/// KS of sampled user distances against both closed-form CDFs for
/// `sets` random (h_s, theta_max, h_p) triples.
std::vector<CheckResult> check_distance_laws(std::uint64_t seed, const EarthConstants& c,
                                             std::size_t n_points = 100'000, std::size_t sets = 5);

/// Chi-square homogeneity of X and Y over 100 equal-area cells for
/// `seeds` independent draws, plus the biased theta = u theta_max sampler
/// that must be rejected.
std::vector<CheckResult> check_homogeneity(std::uint64_t seed, const EarthConstants& c,
                                           std::size_t n_points = 100'000, std::size_t seeds = 20);

/// Paired displacement at fixed cap area 1e6 km^2 over R_s in
/// {1e3, 1e4, 1e5, 1e6} km.
std::vector<CheckResult> check_similarity(std::uint64_t seed, std::size_t n_points = 1000);

/// Beam and area mappings composed with their inverses over 100-point
/// grids, and psi = pi against the LoS cap.
std::vector<CheckResult> check_region_round_trips(const EarthConstants& c);

/// Everything above.
std::vector<CheckResult> run_validation(std::uint64_t seed, const EarthConstants& c);

}  // namespace ntnsim
