#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "qotac/config.hpp"
#include "qotac/montecarlo.hpp"

namespace qotac {

/// Everything needed to execute one CLI command reproducibly. The raw config
/// text is echoed into the emitted manifest so a run can be replayed from
/// its output directory alone.
struct RunManifest {
  std::string command;  // "cdf" | "sweep" | "trial"
  std::filesystem::path out_dir;
  std::string raw_config_text;
  ConfigFile file;
  SimConfig sim;
  std::optional<std::uint64_t> seed_override;
  int n_threads = 0;  // 0 = auto; must not change results
  std::string version;
};

/// Loads and resolves a config file into a manifest for `command`.
RunManifest make_manifest(const std::string& command,
                          const std::filesystem::path& config_path,
                          const std::filesystem::path& out_dir,
                          std::optional<std::uint64_t> seed_override,
                          int n_threads);

/// Runs the experiment at the manifest's single SNR point and writes
/// cdf.csv plus manifest.json into out_dir. Returns the CSV path.
std::filesystem::path cmd_cdf(const RunManifest& manifest);

/// Runs the SNR sweep (>= 2 points) and writes sweep.csv.
std::filesystem::path cmd_sweep(const RunManifest& manifest);

/// Runs a single trial (n_trials == 1) and writes trial-dump.csv with every
/// intermediate quantity.
std::filesystem::path cmd_trial(const RunManifest& manifest);

}  // namespace qotac
