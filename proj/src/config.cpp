#include "ntnsim/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include "ntnsim/errors.hpp"

namespace ntnsim {

namespace {

namespace pt = boost::property_tree;

struct ChannelKey {
  std::string_view name;
  double ChannelModel::*member;
};

constexpr ChannelKey kChannelKeys[] = {
    {"path_loss_exponent", &ChannelModel::path_loss_exponent},
    {"carrier_frequency_ghz", &ChannelModel::carrier_frequency_ghz},
    {"los_sigmoid_a", &ChannelModel::los_sigmoid_a},
    {"los_sigmoid_b", &ChannelModel::los_sigmoid_b},
    {"excess_loss_los_db", &ChannelModel::excess_loss_los_db},
    {"excess_loss_nlos_db", &ChannelModel::excess_loss_nlos_db},
    {"nakagami_m_los", &ChannelModel::nakagami_m_los},
    {"nakagami_m_nlos", &ChannelModel::nakagami_m_nlos},
    {"sr_b0", &ChannelModel::sr_b0},
    {"sr_m", &ChannelModel::sr_m},
    {"sr_omega", &ChannelModel::sr_omega},
    {"tx_power_dbw", &ChannelModel::tx_power_dbw},
    {"tx_antenna_gain_dbi", &ChannelModel::tx_antenna_gain_dbi},
    {"noise_power_dbw", &ChannelModel::noise_power_dbw},
    {"sinr_threshold_db", &ChannelModel::sinr_threshold_db},
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto comma = s.find(',', start);
    const auto item = trim(s.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (!item.empty()) out.push_back(item);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_double(std::string_view key, std::string_view text) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty()) {
    throw ConfigError(fmt::format("{}: '{}' is not a number", key, text));
  }
  return v;
}

template <typename Int>
Int parse_integer(std::string_view key, std::string_view text) {
  const std::string t = trim(text);
  Int v{};
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty()) {
    throw ConfigError(fmt::format("{}: '{}' is not a non-negative integer", key, text));
  }
  return v;
}

std::vector<double> parse_number_list(std::string_view key, std::string_view text) {
  std::vector<double> out;
  for (const auto& item : split_list(text)) out.push_back(parse_double(key, item));
  return out;
}

std::vector<double> parse_angle_list(std::string_view key, std::string_view text) {
  std::vector<double> out;
  for (const auto& item : split_list(text)) {
    try {
      out.push_back(parse_angle(item));
    } catch (const ConfigError& e) {
      throw ConfigError(fmt::format("{}: {}", key, e.what()));
    }
  }
  return out;
}

void apply_channel_key(ChannelModel& ch, const std::string& key, const std::string& value, std::string_view section) {
  if (key == "fading") {
    ch.fading = parse_fading(trim(value));
    return;
  }
  for (const auto& k : kChannelKeys) {
    if (k.name == key) {
      ch.*(k.member) = parse_double(key, value);
      return;
    }
  }
  throw ConfigError(fmt::format("unknown key '{}' in [{}]", key, section));
}

std::string join_numbers(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += fmt::format("{}", v[i]);
  }
  return out;
}

void print_channel(std::string& out, std::string_view section, const ChannelModel& ch) {
  out += fmt::format("\n[{}]\n", section);
  out += fmt::format("fading = {}\n", fading_name(ch.fading));
  for (const auto& k : kChannelKeys) out += fmt::format("{} = {}\n", k.name, ch.*(k.member));
}

}  // namespace

double parse_angle(std::string_view text) {
  static const std::regex pi_form(R"(^\s*(?:([0-9]*\.?[0-9]+(?:[eE][-+]?[0-9]+)?)\s*\*?\s*)?pi\s*(?:/\s*([0-9]*\.?[0-9]+(?:[eE][-+]?[0-9]+)?))?\s*$)");
  const std::string s(text);
  std::smatch m;
  if (std::regex_match(s, m, pi_form)) {
    const double factor = m[1].matched ? parse_double("angle", m[1].str()) : 1.0;
    const double divisor = m[2].matched ? parse_double("angle", m[2].str()) : 1.0;
    if (divisor == 0.0) throw ConfigError(fmt::format("angle '{}' divides by zero", text));
    return factor * std::numbers::pi / divisor;
  }
  return parse_double("angle", text);
}

ChannelModel ChannelSettings::for_altitude(double altitude_km) const {
  const ChannelPreset p = preset == "auto" ? preset_for_altitude(altitude_km) : parse_preset(preset);
  return p == ChannelPreset::AerialToGround ? aerial_to_ground : space_to_ground;
}

RunConfig::RunConfig()
    : beam_angles_rad{std::numbers::pi / 24, std::numbers::pi / 12, std::numbers::pi / 6,
                      std::numbers::pi / 4,  std::numbers::pi / 3,  std::numbers::pi / 2},
      case_study_beam_angles_rad{std::numbers::pi / 24, std::numbers::pi / 12, std::numbers::pi / 6,
                                 std::numbers::pi / 4,  std::numbers::pi / 3,  std::numbers::pi / 2} {}

void RunConfig::validate() const {
  earth.validate();
  if (n_in == 0) throw ConfigError("estimation.n_in must be >= 1");
  if (n_out == 0) throw ConfigError("estimation.n_out must be >= 1");
  if (n_points == 0) throw ConfigError("estimation.n_points must be >= 1");
  if (mc_draws == 0) throw ConfigError("estimation.mc_draws must be >= 1");
  if (channel.preset != "auto") parse_preset(channel.preset);
  channel.aerial_to_ground.validate();
  channel.space_to_ground.validate();
  if (altitudes_km.empty()) throw ConfigError("experiment.altitudes_km is empty");
  for (double h : altitudes_km) {
    if (!(h > 0.0)) throw ConfigError(fmt::format("experiment.altitudes_km: {} is not positive", h));
  }
  if (metrics.empty()) throw ConfigError("experiment.metrics is empty");
  if (beam_angles_rad.empty()) throw ConfigError("experiment.beam_angles_rad is empty");
  if (areas_km2.empty()) throw ConfigError("experiment.areas_km2 is empty");
  if (case_study_beam_angles_rad.empty()) throw ConfigError("experiment.case_study_beam_angles_rad is empty");
  if (!(hap_altitude_km > 0.0 && leo_altitude_km > 0.0)) throw ConfigError("platform altitudes must be positive");
  if (!(planar_threshold > 0.0)) throw ConfigError("experiment.planar_threshold must be positive");
}

RunConfig parse_config_text(std::string_view text) {
  // Boost's INI reader only knows whole-line ';' comments. No value contains
  // '#' or ';', so both are cut wherever they appear.
  std::string cleaned;
  std::istringstream lines{std::string(text)};
  for (std::string line; std::getline(lines, line);) {
    line.erase(std::min(line.find_first_of("#;"), line.size()));
    line.erase(line.find_last_not_of(" \t\r") + 1);
    cleaned += line;
    cleaned += '\n';
  }

  pt::ptree tree;
  try {
    std::istringstream in{cleaned};
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(fmt::format("config parse error: {}", e.what()));
  }

  RunConfig cfg;
  // Shared channel keys first, preset-specific sections afterwards.
  std::vector<std::pair<std::string, std::string>> shared_channel;

  static const std::set<std::string> sections{"earth",      "estimation", "channel", "channel_aerial_to_ground",
                                              "channel_space_to_ground", "experiment", "run"};
  for (const auto& [section, body] : tree) {
    if (!sections.contains(section)) throw ConfigError(fmt::format("unknown section [{}]", section));
    for (const auto& [key, node] : body) {
      const std::string value = node.get_value<std::string>();
      const std::string where = section + "." + key;
      if (section == "earth") {
        if (key != "radius_km") throw ConfigError(fmt::format("unknown key '{}'", where));
        cfg.earth.earth_radius_km = parse_double(where, value);
      } else if (section == "estimation") {
        if (key == "mode") {
          cfg.mode = parse_mode(trim(value));
        } else if (key == "n_in") {
          cfg.n_in = parse_integer<std::size_t>(where, value);
        } else if (key == "n_out") {
          cfg.n_out = parse_integer<std::size_t>(where, value);
        } else if (key == "n_points") {
          cfg.n_points = parse_integer<std::size_t>(where, value);
        } else if (key == "mc_draws") {
          cfg.mc_draws = parse_integer<std::size_t>(where, value);
        } else if (key == "t1_normalization") {
          cfg.normalization = parse_normalization(trim(value));
        } else {
          throw ConfigError(fmt::format("unknown key '{}'", where));
        }
      } else if (section == "channel") {
        if (key == "preset") {
          cfg.channel.preset = trim(value);
        } else {
          shared_channel.emplace_back(key, value);
        }
      } else if (section == "experiment") {
        if (key == "altitudes_km") {
          cfg.altitudes_km = parse_number_list(where, value);
        } else if (key == "metrics") {
          cfg.metrics.clear();
          for (const auto& m : split_list(value)) cfg.metrics.push_back(parse_metric(m));
        } else if (key == "beam_angles_rad") {
          cfg.beam_angles_rad = parse_angle_list(where, value);
        } else if (key == "areas_km2") {
          cfg.areas_km2 = parse_number_list(where, value);
        } else if (key == "case_study_beam_angles_rad") {
          cfg.case_study_beam_angles_rad = parse_angle_list(where, value);
        } else if (key == "hap_altitude_km") {
          cfg.hap_altitude_km = parse_double(where, value);
        } else if (key == "leo_altitude_km") {
          cfg.leo_altitude_km = parse_double(where, value);
        } else if (key == "planar_threshold") {
          cfg.planar_threshold = parse_double(where, value);
        } else {
          throw ConfigError(fmt::format("unknown key '{}'", where));
        }
      } else if (section == "run") {
        if (key == "seed") {
          cfg.seed = parse_integer<std::uint64_t>(where, value);
        } else if (key == "workers") {
          cfg.workers = parse_integer<std::size_t>(where, value);
        } else {
          throw ConfigError(fmt::format("unknown key '{}'", where));
        }
      }
    }
  }

  for (const auto& [key, value] : shared_channel) {
    apply_channel_key(cfg.channel.aerial_to_ground, key, value, "channel");
    apply_channel_key(cfg.channel.space_to_ground, key, value, "channel");
  }
  for (auto [section, model] : {std::pair{"channel_aerial_to_ground", &cfg.channel.aerial_to_ground},
                                std::pair{"channel_space_to_ground", &cfg.channel.space_to_ground}}) {
    if (const auto body = tree.get_child_optional(section)) {
      for (const auto& [key, node] : *body) apply_channel_key(*model, key, node.get_value<std::string>(), section);
    }
  }

  cfg.validate();
  return cfg;
}

RunConfig parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open config file '{}'", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

std::string to_config_text(const RunConfig& cfg, bool include_workers) {
  std::string out;
  out += fmt::format("[earth]\nradius_km = {}\n", cfg.earth.earth_radius_km);
  out += "\n[estimation]\n";
  out += fmt::format("mode = {}\n", mode_name(cfg.mode));
  out += fmt::format("n_in = {}\nn_out = {}\nn_points = {}\nmc_draws = {}\n", cfg.n_in, cfg.n_out, cfg.n_points,
                     cfg.mc_draws);
  out += fmt::format("t1_normalization = {}\n", normalization_name(cfg.normalization));
  out += fmt::format("\n[channel]\npreset = {}\n", cfg.channel.preset);
  print_channel(out, "channel_aerial_to_ground", cfg.channel.aerial_to_ground);
  print_channel(out, "channel_space_to_ground", cfg.channel.space_to_ground);
  out += "\n[experiment]\n";
  out += fmt::format("altitudes_km = {}\n", join_numbers(cfg.altitudes_km));
  std::string metrics;
  for (std::size_t i = 0; i < cfg.metrics.size(); ++i) {
    if (i) metrics += ", ";
    metrics += metric_name(cfg.metrics[i]);
  }
  out += fmt::format("metrics = {}\n", metrics);
  out += fmt::format("beam_angles_rad = {}\n", join_numbers(cfg.beam_angles_rad));
  out += fmt::format("areas_km2 = {}\n", join_numbers(cfg.areas_km2));
  out += fmt::format("case_study_beam_angles_rad = {}\n", join_numbers(cfg.case_study_beam_angles_rad));
  out += fmt::format("hap_altitude_km = {}\nleo_altitude_km = {}\n", cfg.hap_altitude_km, cfg.leo_altitude_km);
  out += fmt::format("planar_threshold = {}\n", cfg.planar_threshold);
  out += fmt::format("\n[run]\nseed = {}\n", cfg.seed);
  if (include_workers) out += fmt::format("workers = {}\n", cfg.workers);
  return out;
}

std::uint64_t config_hash(const RunConfig& cfg) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : to_config_text(cfg, false)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace ntnsim
