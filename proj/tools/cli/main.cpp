// SPDX-License-Identifier: Apache-2.0

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "commands.hpp"
#include "config.hpp"
#include "mfunclab/error.hpp"
#include "presets.hpp"

namespace {

using namespace mfunclab::cli;

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("mfunclab");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("MFUNCLAB_LOG")) {
    const auto level = spdlog::level::from_str(env);
    // from_str maps unknown names to off; only accept "off" literally.
    if (level != spdlog::level::off || std::string(env) == "off") spdlog::set_level(level);
  }
}

int run(const std::string& command, const ScanConfig& cfg, const RunOptions& opts) {
  if (command == "scan") {
    run_scan(cfg, opts);
  } else if (command == "compare-twins") {
    run_compare_twins(cfg, opts);
  } else if (command == "krein-verify") {
    run_krein_verify(cfg, opts);
  } else if (command == "halfspace") {
    run_halfspace(cfg, opts);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();

  CLI::App app{"M-function laboratory for boundary value problems of 2 x 2 systems"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::size_t workers = 1;
  std::optional<std::size_t> grid_n;
  std::string demo_name;

  auto add_common = [&](CLI::App* sub, bool needs_config) {
    auto* opt = sub->add_option("--config", config_path, "JSON configuration file");
    if (needs_config) opt->required();
    sub->add_option("--out", out_dir, "Output directory")->capture_default_str();
    sub->add_option("--seed", seed, "Random seed (overrides the config)");
    sub->add_option("--workers", workers, "Worker threads for lambda scans")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--grid-n", grid_n, "Grid points on [0, 1] (odd)");
  };
  CLI::App* scan = app.add_subcommand("scan", "Scan a lambda window for spectral points");
  CLI::App* twins = app.add_subcommand("compare-twins", "Compare M-functions of twin operators");
  CLI::App* krein = app.add_subcommand("krein-verify", "Check the Krein resolvent formula");
  CLI::App* half = app.add_subcommand("halfspace", "Tabulate half-space symbols");
  CLI::App* demo = app.add_subcommand("demo", "Run a shipped preset");
  for (CLI::App* sub : {scan, twins, krein, half}) add_common(sub, true);
  add_common(demo, false);
  demo->add_option("name", demo_name, "decoupled | generic | counterexample")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  RunOptions opts;
  opts.out_dir = out_dir;
  opts.seed = seed;
  opts.workers = workers;
  opts.grid_n = grid_n;

  try {
    if (demo->parsed()) {
      const json preset = preset_config(demo_name);
      const ScanConfig cfg = parse_config(preset);
      if (opts.write_files) {
        std::filesystem::create_directories(opts.out_dir);
        std::ofstream(opts.out_dir / "config.json") << preset.dump(2) << "\n";
      }
      if (cfg.twins) {
        run_compare_twins(cfg, opts);
      } else {
        run_scan(cfg, opts);
        if (cfg.krein) run_krein_verify(cfg, opts);
      }
      return kExitOk;
    }
    const ScanConfig cfg = load_config(config_path);
    for (CLI::App* sub : {scan, twins, krein, half}) {
      if (sub->parsed()) return run(sub->get_name(), cfg, opts);
    }
  } catch (const ConfigError& e) {
    spdlog::error("{}", e.what());
    return kExitConfig;
  } catch (const CommandError& e) {
    spdlog::error("{}", e.what());
    return e.exit_code();
  } catch (const mfunclab::Error& e) {
    spdlog::error("{}", e.what());
    return kExitBackend;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kExitBackend;
  }
  return kExitOk;
}
