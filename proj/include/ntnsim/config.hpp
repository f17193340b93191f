#pragma once

// Run configuration, read from INI-style key-value text:
//
//   [earth]                      radius_km
//   [estimation]                 mode, n_in, n_out, n_points, mc_draws, t1_normalization
//   [channel]                    preset (auto | aerial_to_ground | space_to_ground)
//                                plus any channel key, applied to both presets
//   [channel_aerial_to_ground]   channel keys for that preset only
//   [channel_space_to_ground]
//   [experiment]                 altitudes_km, metrics, beam_angles_rad, areas_km2,
//                                case_study_beam_angles_rad, hap_altitude_km,
//                                leo_altitude_km, planar_threshold
//   [run]                        seed, workers
//
// Lists are comma separated. Angles accept plain radians or multiples of
// pi written as "pi/12", "3*pi/4", "pi".

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "ntnsim/channel.hpp"
#include "ntnsim/errest.hpp"
#include "ntnsim/geom.hpp"
#include "ntnsim/metrics.hpp"

namespace ntnsim {

struct ChannelSettings {
  std::string preset = "auto";
  ChannelModel aerial_to_ground = ChannelModel::aerial_to_ground();
  ChannelModel space_to_ground = ChannelModel::space_to_ground();

  /// Model used for platforms at `altitude_km` above ground.
  ChannelModel for_altitude(double altitude_km) const;
};

struct RunConfig {
  EarthConstants earth;

  EstimationMode mode = EstimationMode::CSM;
  std::size_t n_in = 1000;
  std::size_t n_out = 50;
  std::size_t n_points = 20;
  std::size_t mc_draws = 32;
  TransportNormalization normalization = TransportNormalization::ToUser;

  ChannelSettings channel;

  std::vector<double> altitudes_km{20.0, 100.0, 550.0, 1000.0};
  std::vector<MetricId> metrics{MetricId::T2_AvgEnergy};
  std::vector<double> beam_angles_rad;
  std::vector<double> areas_km2{1e4, 1e5, 1e6, 5e6};
  std::vector<double> case_study_beam_angles_rad;
  double hap_altitude_km = 20.0;
  double leo_altitude_km = 550.0;
  double planar_threshold = 1e-3;

  std::uint64_t seed = 1;
  std::size_t workers = 0;

  RunConfig();

  void validate() const;
};

RunConfig parse_config_text(std::string_view text);
RunConfig parse_config_file(const std::filesystem::path& path);

/// Fully resolved config, parseable by parse_config_text. The [run]
/// workers key is omitted when include_workers is false.
std::string to_config_text(const RunConfig& cfg, bool include_workers = true);

/// FNV-1a 64 of the resolved config without the worker count.
std::uint64_t config_hash(const RunConfig& cfg);

/// "pi/12", "3*pi/4", "2pi", "0.5" -> radians.
double parse_angle(std::string_view text);

}  // namespace ntnsim
