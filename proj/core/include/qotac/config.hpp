#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "qotac/montecarlo.hpp"
#include "qotac/types.hpp"

namespace qotac {

/// Typed view of a config file: every documented key, with unset optionals
/// meaning "use the documented default". Weighted-average weights and
/// standardization constants are resolved later, in make_sim_config.
struct ConfigFile {
  int n_rx = 0;
  int n_dev = 0;
  std::vector<double> snr_db;
  int n_trials = 20000;
  std::uint64_t seed = 1;
  Scheme scheme = Scheme::Both;
  PowerMode power_mode = PowerMode::PerStreamUnit;
  std::string function_f;
  std::optional<std::string> function_g;
  double product_base = 2.718281828459045235;  // e
  UniformDist weights_dist{0.5, 1.5};
  std::optional<UniformDist> data_dist_f;
  std::optional<UniformDist> data_dist_g;

  bool operator==(const ConfigFile&) const = default;
};

/// Parses the documented key=value format. Unknown keys raise UnknownKey,
/// malformed values raise ParseError with line context, and invariant
/// violations raise ValidationError.
ConfigFile parse_config_text(const std::string& text);

/// Reads and parses a config file; IoError when it cannot be read.
ConfigFile parse_config(const std::filesystem::path& path);

/// Canonical text form; parse_config_text(write_config(c)) == c.
std::string write_config(const ConfigFile& cfg);

/// Resolves a parsed file into a runnable SimConfig: applies the optional
/// seed override, draws weighted-average weights from the master seed, fills
/// per-function data-distribution defaults and computes standardization
/// constants. Throws ValidationError on any invariant violation.
SimConfig make_sim_config(const ConfigFile& file,
                          std::optional<std::uint64_t> seed_override = {});

}  // namespace qotac
