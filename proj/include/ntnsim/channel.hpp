#pragma once

// Parametric link models for the system-level metrics.
//
// Received power of one link, linear watts:
//
//   P_rx = 10^((P_tx + G_tx - PL(d) - eta_state) / 10) * fading
//   PL(d) = 20 log10(4 pi f / c) + 10 alpha log10(d / 1 m)
//
// AerialToGround draws a LoS/NLoS state per link with the sigmoid
// probability 1 / (1 + a exp(-b (elevation_deg - a))), then Nakagami-m
// power fading with the state's m. SpaceToGround is always LoS with
// shadowed-Rician fading (scatter power 2 b0, LoS Nakagami parameter m,
// LoS power omega).

#include <cstdint>
#include <string_view>

#include "ntnsim/geom.hpp"
#include "ntnsim/rng.hpp"

namespace ntnsim {

enum class ChannelPreset { AerialToGround, SpaceToGround };
enum class FadingKind { None, Nakagami, ShadowedRician };

struct ChannelModel {
  ChannelPreset preset = ChannelPreset::AerialToGround;
  double path_loss_exponent = 2.0;
  double carrier_frequency_ghz = 2.0;
  double los_sigmoid_a = 9.61;
  double los_sigmoid_b = 0.16;
  double excess_loss_los_db = 1.0;
  double excess_loss_nlos_db = 20.0;
  FadingKind fading = FadingKind::Nakagami;
  double nakagami_m_los = 3.0;
  double nakagami_m_nlos = 1.0;
  double sr_b0 = 0.158;
  double sr_m = 19.4;
  double sr_omega = 1.29;
  double tx_power_dbw = 10.0;
  double tx_antenna_gain_dbi = 30.0;
  double noise_power_dbw = -124.0;
  double sinr_threshold_db = -5.0;

  static ChannelModel aerial_to_ground();
  static ChannelModel space_to_ground();

  /// Throws ConfigError on alpha < 2, m < 0.5 or non-finite powers.
  void validate() const;

  double noise_power_w() const;
  double sinr_threshold_linear() const;
};

/// Preset by platform altitude above ground: aerial-to-ground up to
/// 1000 km, space-to-ground from 10000 km. Altitudes in between have no
/// default and throw ConfigError.
ChannelPreset preset_for_altitude(double altitude_km);

std::string_view preset_name(ChannelPreset p);
ChannelPreset parse_preset(std::string_view name);
std::string_view fading_name(FadingKind f);
FadingKind parse_fading(std::string_view name);

double db_to_linear(double db);

double path_loss_db(const ChannelModel& ch, double distance_km);
double los_probability(const ChannelModel& ch, double elevation_rad);

/// Unit-mean Gamma(m, 1/m) power gain.
double draw_nakagami_power(double m, CounterRng& rng);
double draw_shadowed_rician_power(double b0, double m, double omega, CounterRng& rng);

/// One random realization of the received power from an NTP at `point`.
double link_gain(const CartesianPoint& point, const ChannelModel& ch, const EarthConstants& c, CounterRng& rng);

}  // namespace ntnsim
