#include "ntnsim/channel.hpp"

#include <cmath>
#include <random>

#include <fmt/format.h>

#include "ntnsim/errors.hpp"

namespace ntnsim {

namespace {
constexpr double kSpeedOfLight = 299792458.0;
}

ChannelModel ChannelModel::aerial_to_ground() { return ChannelModel{}; }

ChannelModel ChannelModel::space_to_ground() {
  ChannelModel ch;
  ch.preset = ChannelPreset::SpaceToGround;
  ch.fading = FadingKind::ShadowedRician;
  ch.excess_loss_los_db = 0.0;
  ch.excess_loss_nlos_db = 0.0;
  ch.tx_power_dbw = 20.0;
  ch.tx_antenna_gain_dbi = 40.0;
  return ch;
}

void ChannelModel::validate() const {
  if (!(path_loss_exponent >= 2.0)) throw ConfigError(fmt::format("path_loss_exponent {} < 2", path_loss_exponent));
  if (!(carrier_frequency_ghz > 0.0)) throw ConfigError("carrier_frequency_ghz must be positive");
  if (fading == FadingKind::Nakagami && !(nakagami_m_los >= 0.5 && nakagami_m_nlos >= 0.5)) {
    throw ConfigError("Nakagami m must be >= 0.5");
  }
  if (fading == FadingKind::ShadowedRician && !(sr_m >= 0.5 && sr_b0 >= 0.0 && sr_omega >= 0.0)) {
    throw ConfigError("shadowed-Rician needs m >= 0.5, b0 >= 0, omega >= 0");
  }
  for (double v : {tx_power_dbw, tx_antenna_gain_dbi, noise_power_dbw, excess_loss_los_db, excess_loss_nlos_db,
                   los_sigmoid_a, los_sigmoid_b}) {
    if (!std::isfinite(v)) throw ConfigError("channel powers and losses must be finite");
  }
  if (std::isnan(sinr_threshold_db)) throw ConfigError("sinr_threshold_db is NaN");
}

double ChannelModel::noise_power_w() const { return db_to_linear(noise_power_dbw); }
double ChannelModel::sinr_threshold_linear() const { return db_to_linear(sinr_threshold_db); }

ChannelPreset preset_for_altitude(double altitude_km) {
  if (altitude_km <= 1000.0) return ChannelPreset::AerialToGround;
  if (altitude_km >= 10000.0) return ChannelPreset::SpaceToGround;
  throw ConfigError(fmt::format(
      "no default channel for altitude {} km (between 1000 and 10000 km); set channel.preset explicitly",
      altitude_km));
}

std::string_view preset_name(ChannelPreset p) {
  return p == ChannelPreset::AerialToGround ? "aerial_to_ground" : "space_to_ground";
}

ChannelPreset parse_preset(std::string_view name) {
  if (name == "aerial_to_ground") return ChannelPreset::AerialToGround;
  if (name == "space_to_ground") return ChannelPreset::SpaceToGround;
  throw ConfigError(fmt::format("unknown channel preset '{}'", name));
}

std::string_view fading_name(FadingKind f) {
  switch (f) {
    case FadingKind::None: return "none";
    case FadingKind::Nakagami: return "nakagami";
    case FadingKind::ShadowedRician: return "shadowed_rician";
  }
  return "none";
}

FadingKind parse_fading(std::string_view name) {
  if (name == "none") return FadingKind::None;
  if (name == "nakagami") return FadingKind::Nakagami;
  if (name == "shadowed_rician") return FadingKind::ShadowedRician;
  throw ConfigError(fmt::format("unknown fading model '{}'", name));
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double path_loss_db(const ChannelModel& ch, double distance_km) {
  const double f_hz = ch.carrier_frequency_ghz * 1e9;
  const double reference = 20.0 * std::log10(4.0 * std::numbers::pi * f_hz / kSpeedOfLight);
  return reference + 10.0 * ch.path_loss_exponent * std::log10(distance_km * 1e3);
}

double los_probability(const ChannelModel& ch, double elevation_rad) {
  const double deg = elevation_rad * 180.0 / std::numbers::pi;
  return 1.0 / (1.0 + ch.los_sigmoid_a * std::exp(-ch.los_sigmoid_b * (deg - ch.los_sigmoid_a)));
}

double draw_nakagami_power(double m, CounterRng& rng) {
  std::gamma_distribution<double> gamma(m, 1.0 / m);
  return gamma(rng);
}

double draw_shadowed_rician_power(double b0, double m, double omega, CounterRng& rng) {
  // LoS amplitude is Nakagami-m with mean power omega; scatter is circular
  // Gaussian with per-dimension variance b0. The LoS phase is absorbed by
  // the circular symmetry of the scatter term.
  std::gamma_distribution<double> gamma(m, omega / m);
  std::normal_distribution<double> normal(0.0, std::sqrt(b0));
  const double los = std::sqrt(gamma(rng));
  const double re = los + normal(rng);
  const double im = normal(rng);
  return re * re + im * im;
}

double link_gain(const CartesianPoint& point, const ChannelModel& ch, const EarthConstants& c, CounterRng& rng) {
  const double d = (point - user_position(c)).norm();
  bool los = true;
  if (ch.preset == ChannelPreset::AerialToGround) {
    los = rng.uniform() < los_probability(ch, elevation_angle(point, c));
  }
  double fading = 1.0;
  switch (ch.fading) {
    case FadingKind::None: break;
    case FadingKind::Nakagami:
      fading = draw_nakagami_power(los ? ch.nakagami_m_los : ch.nakagami_m_nlos, rng);
      break;
    case FadingKind::ShadowedRician:
      fading = draw_shadowed_rician_power(ch.sr_b0, ch.sr_m, ch.sr_omega, rng);
      break;
  }
  const double excess = los ? ch.excess_loss_los_db : ch.excess_loss_nlos_db;
  return db_to_linear(ch.tx_power_dbw + ch.tx_antenna_gain_dbi - path_loss_db(ch, d) - excess) * fading;
}

}  // namespace ntnsim
