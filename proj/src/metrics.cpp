#include "ntnsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "ntnsim/errors.hpp"

namespace ntnsim {

std::string_view metric_name(MetricId id) {
  switch (id) {
    case MetricId::T1_PairedTransport: return "t1";
    case MetricId::T2_AvgEnergy: return "t2";
    case MetricId::T3_ContactEnergy: return "t3";
    case MetricId::S1_AvgSINR: return "s1";
    case MetricId::S2_Coverage: return "s2";
    case MetricId::S3_AvgRate: return "s3";
  }
  return "?";
}

MetricId parse_metric(std::string_view name) {
  for (MetricId id : kAllMetrics) {
    if (metric_name(id) == name) return id;
  }
  throw ConfigError(fmt::format("unknown metric '{}' (expected t1, t2, t3, s1, s2 or s3)", name));
}

bool is_system_level(MetricId id) {
  return id == MetricId::S1_AvgSINR || id == MetricId::S2_Coverage || id == MetricId::S3_AvgRate;
}

std::string_view normalization_name(TransportNormalization n) {
  return n == TransportNormalization::ToUser ? "to_user" : "to_earth_center";
}

TransportNormalization parse_normalization(std::string_view name) {
  if (name == "to_user") return TransportNormalization::ToUser;
  if (name == "to_earth_center") return TransportNormalization::ToEarthCenter;
  throw ConfigError(fmt::format("unknown t1 normalization '{}'", name));
}

double t1_paired_transport(const PairedDeployment& pair, const EarthConstants& c, TransportNormalization norm) {
  const CartesianPoint origin = norm == TransportNormalization::ToUser ? user_position(c) : CartesianPoint{};
  const auto xs = pair.spherical_cartesian();
  const auto ys = pair.planar_cartesian();
  double sum = 0.0;
  for (std::size_t n = 0; n < xs.size(); ++n) {
    sum += squared_distance(xs[n], ys[n]) / squared_distance(xs[n], origin);
  }
  return sum / static_cast<double>(xs.size());
}

double t2_avg_energy(std::span<const CartesianPoint> points, const EarthConstants& c) {
  if (points.empty()) throw DomainError("t2 needs a nonempty point set");
  const CartesianPoint user = user_position(c);
  double sum = 0.0;
  for (const auto& p : points) sum += squared_distance(p, user);
  return sum / static_cast<double>(points.size());
}

double t3_contact_energy(std::span<const CartesianPoint> points, const EarthConstants& c) {
  if (points.empty()) throw DomainError("t3 needs a nonempty point set");
  return squared_distance(points[serving_index(points, c)], user_position(c));
}

std::size_t serving_index(std::span<const CartesianPoint> points, const EarthConstants& c) {
  const CartesianPoint user = user_position(c);
  std::size_t best = 0;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double d2 = squared_distance(points[i], user);
    if (d2 < best_d2) {
      best_d2 = d2;
      best = i;
    }
  }
  return best;
}

double sinr_realization(std::span<const CartesianPoint> points, const ChannelModel& ch, const EarthConstants& c,
                        CounterRng& rng) {
  if (points.empty()) throw DomainError("SINR needs at least one NTP");
  const std::size_t serving = serving_index(points, c);
  double signal = 0.0;
  double interference = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double g = link_gain(points[i], ch, c, rng);
    if (i == serving) {
      signal = g;
    } else {
      interference += g;
    }
  }
  return signal / (interference + ch.noise_power_w());
}

std::vector<double> sinr_draws(std::span<const CartesianPoint> points, const ChannelModel& ch,
                               const EarthConstants& c, std::size_t count, RngSpec rng) {
  std::vector<double> out(count);
  for (std::size_t k = 0; k < count; ++k) {
    CounterRng gen(rng.child(k));
    out[k] = sinr_realization(points, ch, c, gen);
  }
  return out;
}

double reduce_sinr(MetricId id, std::span<const double> sinr, double threshold_linear) {
  if (sinr.empty()) throw ConfigError("system metrics need at least one draw");
  double acc = 0.0;
  switch (id) {
    case MetricId::S1_AvgSINR:
      for (double s : sinr) acc += s;
      break;
    case MetricId::S2_Coverage:
      for (double s : sinr) acc += s > threshold_linear ? 1.0 : 0.0;
      break;
    case MetricId::S3_AvgRate:
      for (double s : sinr) acc += std::log2(1.0 + s);
      break;
    default: throw ConfigError(fmt::format("metric {} is not a system metric", metric_name(id)));
  }
  return acc / static_cast<double>(sinr.size());
}

double evaluate_metric(MetricId id, std::span<const CartesianPoint> points, const MetricContext& ctx, RngSpec rng) {
  switch (id) {
    case MetricId::T1_PairedTransport:
      throw ConfigError("t1 compares two processes; use t1_paired_transport on a paired deployment");
    case MetricId::T2_AvgEnergy: return t2_avg_energy(points, ctx.earth);
    case MetricId::T3_ContactEnergy: return t3_contact_energy(points, ctx.earth);
    default: break;
  }
  if (!ctx.channel) throw ConfigError(fmt::format("metric {} needs a channel model", metric_name(id)));
  if (ctx.mc_draws == 0) throw ConfigError("system metrics need mc_draws >= 1");
  const auto sinr = sinr_draws(points, *ctx.channel, ctx.earth, ctx.mc_draws, rng);
  return reduce_sinr(id, sinr, ctx.channel->sinr_threshold_linear());
}

}  // namespace ntnsim
