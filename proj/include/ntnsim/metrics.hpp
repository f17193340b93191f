#pragma once

// Similarity metrics evaluated on one realization of a point process.
//
// Topology metrics treat every NTP as a unit mass; moving it over distance
// d costs d^2.
//   t1  mean over n of |x_n - y_n|^2 / |x_n - o|^2   (paired transport)
//   t2  mean squared user-to-NTP distance
//   t3  squared contact distance (nearest NTP)
// System metrics use nearest-distance association; every other NTP
// interferes.
//   s1  mean SINR over fading draws
//   s2  fraction of draws with SINR > threshold
//   s3  mean log2(1 + SINR) over draws

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "ntnsim/channel.hpp"
#include "ntnsim/geom.hpp"
#include "ntnsim/pointgen.hpp"
#include "ntnsim/rng.hpp"

namespace ntnsim {

enum class MetricId { T1_PairedTransport, T2_AvgEnergy, T3_ContactEnergy, S1_AvgSINR, S2_Coverage, S3_AvgRate };

inline constexpr MetricId kAllMetrics[] = {MetricId::T1_PairedTransport, MetricId::T2_AvgEnergy,
                                           MetricId::T3_ContactEnergy,   MetricId::S1_AvgSINR,
                                           MetricId::S2_Coverage,        MetricId::S3_AvgRate};

std::string_view metric_name(MetricId id);
MetricId parse_metric(std::string_view name);
bool is_system_level(MetricId id);

/// Reference point o for t1: the typical user, or the Earth center.
enum class TransportNormalization { ToUser, ToEarthCenter };

std::string_view normalization_name(TransportNormalization n);
TransportNormalization parse_normalization(std::string_view name);

double t1_paired_transport(const PairedDeployment& pair, const EarthConstants& c,
                           TransportNormalization norm = TransportNormalization::ToUser);
double t2_avg_energy(std::span<const CartesianPoint> points, const EarthConstants& c);
double t3_contact_energy(std::span<const CartesianPoint> points, const EarthConstants& c);

/// Index of the NTP nearest to the user (lowest index on ties).
std::size_t serving_index(std::span<const CartesianPoint> points, const EarthConstants& c);

/// One fading realization: serving gain / (sum of other gains + noise).
double sinr_realization(std::span<const CartesianPoint> points, const ChannelModel& ch, const EarthConstants& c,
                        CounterRng& rng);

/// SINR for draws 0..count-1; draw k uses stream rng.child(k).
std::vector<double> sinr_draws(std::span<const CartesianPoint> points, const ChannelModel& ch,
                               const EarthConstants& c, std::size_t count, RngSpec rng);

struct MetricContext {
  EarthConstants earth;
  std::optional<ChannelModel> channel;
  std::size_t mc_draws = 32;
  TransportNormalization normalization = TransportNormalization::ToUser;
};

/// Evaluates a single-process metric (t2, t3, s1-s3). t1 needs both
/// processes and is rejected here; system metrics without a channel or
/// with zero draws throw ConfigError.
double evaluate_metric(MetricId id, std::span<const CartesianPoint> points, const MetricContext& ctx, RngSpec rng);

/// Reduces buffered per-draw SINR values to s1, s2 or s3.
double reduce_sinr(MetricId id, std::span<const double> sinr, double threshold_linear);

}  // namespace ntnsim
