// ntnsim: experiment runner.
//
//   ntnsim <experiment> [--config f.ini] [--seed n] [--workers n] [--out dir]
//   ntnsim validate     [--seed n] [--out dir]
//   ntnsim points       [--altitude km] [--count n] [--seed n] [--out dir]
//   ntnsim --print-config [--config f.ini]
//
// Exit codes: 0 success, 1 validation failed, 2 config error, 3 domain error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "ntnsim/config.hpp"
#include "ntnsim/distributions.hpp"
#include "ntnsim/errors.hpp"
#include "ntnsim/experiments.hpp"
#include "ntnsim/pointgen.hpp"
#include "ntnsim/validation.hpp"

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitConfig = 2;
constexpr int kExitDomain = 3;

struct Options {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> workers;
  std::string out_dir = ".";
  bool print_config = false;
  double points_altitude_km = 550.0;
  std::size_t points_count = 20;
};

ntnsim::RunConfig load(const Options& opt) {
  ntnsim::RunConfig cfg = opt.config_path.empty() ? ntnsim::RunConfig{} : ntnsim::parse_config_file(opt.config_path);
  if (opt.seed) cfg.seed = *opt.seed;
  if (opt.workers) cfg.workers = *opt.workers;
  cfg.validate();
  return cfg;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ntnsim::ConfigError(fmt::format("cannot write '{}'", path.string()));
  f << text;
}

int run_experiment(ntnsim::ExperimentKind kind, const ntnsim::RunConfig& cfg, const Options& opt) {
  ntnsim::RunManifest manifest;
  manifest.experiment = std::string(ntnsim::experiment_name(kind));
  manifest.config_hash = ntnsim::config_hash(cfg);
  manifest.seed = cfg.seed;
  manifest.started_utc = ntnsim::utc_timestamp();
  const auto out = ntnsim::run_experiment(kind, cfg);
  manifest.finished_utc = ntnsim::utc_timestamp();
  manifest.result_rows = out.results.rows.size();
  manifest.sweep_rows = out.sweep.rows.size();

  const std::filesystem::path dir(opt.out_dir);
  ntnsim::write_experiment(dir, out, manifest);
  write_text(dir / (manifest.experiment + "_config.ini"), ntnsim::to_config_text(cfg));
  fmt::print("{}: {} result rows, {} sweep rows -> {}\n", manifest.experiment, manifest.result_rows,
             manifest.sweep_rows, dir.string());
  return 0;
}

int run_validate(const ntnsim::RunConfig& cfg, const Options& opt) {
  const auto checks = ntnsim::run_validation(cfg.seed, cfg.earth);
  std::string csv = "check,statistic,threshold,pass\n";
  for (const auto& c : checks) {
    csv += fmt::format("{},{},{},{}\n", c.name, c.statistic, c.threshold, c.pass ? 1 : 0);
    fmt::print("{} {} (statistic {:.6g}, bound {:.6g})\n", c.pass ? "PASS" : "FAIL", c.name, c.statistic,
               c.threshold);
  }
  const std::filesystem::path dir(opt.out_dir);
  std::filesystem::create_directories(dir);
  write_text(dir / "validate.csv", csv);
  return ntnsim::all_pass(checks) ? 0 : kExitValidation;
}

int run_points(const ntnsim::RunConfig& cfg, const Options& opt) {
  const double rs = cfg.earth.earth_radius_km + opt.points_altitude_km;
  const double theta = ntnsim::los_theta_max(rs, cfg.earth);
  const double hp = ntnsim::optimal_altitude(rs, theta, rs * std::sin(theta), cfg.earth);
  const auto params = ntnsim::DeploymentParams::make(rs, theta, hp, opt.points_count);
  const auto pair = ntnsim::generate_pair(params, ntnsim::RngSpec{cfg.seed, 0});
  const std::filesystem::path dir(opt.out_dir);
  std::filesystem::create_directories(dir);
  std::ofstream f(dir / "points.csv", std::ios::binary);
  if (!f) throw ntnsim::ConfigError(fmt::format("cannot write '{}'", (dir / "points.csv").string()));
  ntnsim::write_points_csv(f, pair);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spherical vs planar non-terrestrial network models: experiment runner"};
  app.fallthrough();
  Options opt;
  app.add_option("--config", opt.config_path, "INI config file")->check(CLI::ExistingFile);
  app.add_option("--seed", opt.seed, "Override [run] seed");
  app.add_option("--workers", opt.workers, "Worker threads (0 = all cores); never changes results");
  app.add_option("--out", opt.out_dir, "Output directory");
  app.add_flag("--print-config", opt.print_config, "Print the fully resolved config and exit");

  const auto blurb = [](ntnsim::ExperimentKind k) -> std::string {
    switch (k) {
      case ntnsim::ExperimentKind::OptAltSweep: return "Optimal planar altitude per (h_s, metric) vs the closed form";
      case ntnsim::ExperimentKind::ErrVsAltitude: return "Minimum relative error vs satellite altitude";
      case ntnsim::ExperimentKind::HeatmapBeam: return "Error over (altitude, beam angle)";
      case ntnsim::ExperimentKind::HeatmapArea: return "Error over (altitude, coverage area)";
      case ntnsim::ExperimentKind::CaseStudy: return "HAP vs LEO error and planar recommendation";
    }
    return {};
  };
  std::optional<ntnsim::ExperimentKind> kind;
  for (auto k : ntnsim::kAllExperiments) {
    auto* sub = app.add_subcommand(std::string(ntnsim::experiment_name(k)), blurb(k));
    sub->callback([&kind, k] { kind = k; });
  }
  auto* validate = app.add_subcommand("validate", "Statistical and analytic self-checks");
  auto* points = app.add_subcommand("points", "Dump one paired deployment at the equalizing altitude");
  points->add_option("--altitude", opt.points_altitude_km, "Platform altitude above ground (km)");
  points->add_option("--count", opt.points_count, "Number of points");
  app.require_subcommand(0, 1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    const ntnsim::RunConfig cfg = load(opt);
    if (opt.print_config) {
      fmt::print("{}", ntnsim::to_config_text(cfg));
      return 0;
    }
    if (kind) return run_experiment(*kind, cfg, opt);
    if (validate->parsed()) return run_validate(cfg, opt);
    if (points->parsed()) return run_points(cfg, opt);
    fmt::print(stderr, "{}", app.help());
    return kExitConfig;
  } catch (const ntnsim::ConfigError& e) {
    fmt::print(stderr, "config error: {}\n", e.what());
    return kExitConfig;
  } catch (const ntnsim::DomainError& e) {
    fmt::print(stderr, "domain error: {}\n", e.what());
    return kExitDomain;
  } catch (const std::filesystem::filesystem_error& e) {
    fmt::print(stderr, "config error: {}\n", e.what());
    return kExitConfig;
  }
}
