#include "qotac/commands.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qotac/csv.hpp"
#include "qotac/errors.hpp"
#include "qotac/version.hpp"

namespace qotac {

namespace {

namespace fs = std::filesystem;

std::string utc_timestamp(std::chrono::system_clock::time_point tp) {
  const std::time_t t = std::chrono::system_clock::to_time_t(tp);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buffer;
}

/// Writes contents through a temporary file and renames it into place, so a
/// failed run never leaves a partial CSV behind.
void write_file_atomic(const fs::path& path, const std::string& contents) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out << contents;
    out.flush();
    if (!out) {
      out.close();
      std::error_code ec;
      fs::remove(tmp, ec);
      throw IoError("failed writing " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("failed to move " + tmp.string() + " into place: " +
                  ec.message());
  }
}

void write_manifest(const RunManifest& manifest, const fs::path& csv_path,
                    std::chrono::system_clock::time_point started,
                    double elapsed_seconds) {
  ConfigFile effective = manifest.file;
  effective.seed = manifest.sim.seed;

  nlohmann::json j;
  j["command"] = manifest.command;
  j["version"] = manifest.version;
  j["csv"] = csv_path.filename().string();
  j["started_utc"] = utc_timestamp(started);
  j["elapsed_seconds"] = elapsed_seconds;
  j["threads"] = manifest.n_threads;
  if (manifest.seed_override) {
    j["seed_override"] = *manifest.seed_override;
  } else {
    j["seed_override"] = nullptr;
  }
  j["config_raw"] = manifest.raw_config_text;
  j["config_resolved"] = write_config(effective);

  write_file_atomic(manifest.out_dir / "manifest.json", j.dump(2) + "\n");
}

void ensure_out_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw IoError("cannot create output directory " + dir.string() + ": " +
                  ec.message());
  }
}

template <typename Body>
fs::path run_command(const RunManifest& manifest, const std::string& filename,
                     Body&& body) {
  ensure_out_dir(manifest.out_dir);
  const fs::path csv_path = manifest.out_dir / filename;
  const auto started = std::chrono::system_clock::now();
  const auto tick = std::chrono::steady_clock::now();

  std::ostringstream csv;
  body(csv);

  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - tick)
          .count();
  write_file_atomic(csv_path, csv.str());
  write_manifest(manifest, csv_path, started, elapsed);
  return csv_path;
}

}  // namespace

RunManifest make_manifest(const std::string& command,
                          const fs::path& config_path, const fs::path& out_dir,
                          std::optional<std::uint64_t> seed_override,
                          int n_threads) {
  std::ifstream in(config_path, std::ios::binary);
  if (!in) throw IoError("cannot open config file " + config_path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();

  RunManifest manifest;
  manifest.command = command;
  manifest.out_dir = out_dir;
  manifest.raw_config_text = buffer.str();
  manifest.file = parse_config_text(manifest.raw_config_text);
  manifest.sim = make_sim_config(manifest.file, seed_override);
  manifest.seed_override = seed_override;
  manifest.n_threads = n_threads;
  manifest.version = std::string(kVersion);
  return manifest;
}

fs::path cmd_cdf(const RunManifest& manifest) {
  if (manifest.sim.snr_db.size() != 1) {
    throw ValidationError("the cdf command needs exactly one SNR point, got " +
                          std::to_string(manifest.sim.snr_db.size()));
  }
  return run_command(manifest, "cdf.csv", [&](std::ostream& out) {
    const auto records = run_experiment(manifest.sim, manifest.n_threads);
    write_cdf_csv(out, aggregate_cdf(records, manifest.sim));
  });
}

fs::path cmd_sweep(const RunManifest& manifest) {
  if (manifest.sim.snr_db.size() < 2) {
    throw ValidationError("the sweep command needs at least two SNR points");
  }
  return run_command(manifest, "sweep.csv", [&](std::ostream& out) {
    const auto records = run_experiment(manifest.sim, manifest.n_threads);
    write_sweep_csv(out, aggregate_sweep(records, manifest.sim));
  });
}

fs::path cmd_trial(const RunManifest& manifest) {
  if (manifest.sim.n_trials != 1) {
    throw ValidationError("the trial command needs n_trials = 1, got " +
                          std::to_string(manifest.sim.n_trials));
  }
  return run_command(manifest, "trial-dump.csv", [&](std::ostream& out) {
    validate(manifest.sim);
    TrialTrace trace;
    const TrialResult result =
        run_trial(manifest.sim, 0, 0, nullptr, &trace);
    write_trial_dump_csv(out, trace, result);
  });
}

}  // namespace qotac
